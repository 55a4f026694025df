// Regenerates the oracle reference file: qfn_golden [output-path]
#include <fstream>
#include <iostream>

#include "qfn/golden.hpp"

int main(int argc, char** argv)
{
    try
    {
        const std::string text = qfn::generate_golden();
        if (argc < 2)
        {
            std::cout << text;
            return 0;
        }
        std::ofstream out(argv[1], std::ios::binary);
        out << text;
        if (!out)
        {
            std::cerr << "qfn_golden: cannot write " << argv[1] << "\n";
            return 2;
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "qfn_golden: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
