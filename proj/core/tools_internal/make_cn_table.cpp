// Writes the prototype color-name table in the raw float32 layout.
#include "situp/features.hpp"

#include <exception>
#include <iostream>

int main(int argc, char** argv)
{
    if (argc != 2) {
        std::cerr << "usage: situp_make_cn_table OUTPUT.bin\n";
        return 1;
    }
    try {
        situp::ColorNameTable::prototypes().save_binary(argv[1]);
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 0;
}
