#ifndef QFN_QFN_HPP
#define QFN_QFN_HPP

#include "qfn/types.hpp"
#include "qfn/special.hpp"
#include "qfn/quadrature.hpp"
#include "qfn/nuttall.hpp"
#include "qfn/toronto.hpp"
#include "qfn/golden.hpp"

#endif // QFN_QFN_HPP
