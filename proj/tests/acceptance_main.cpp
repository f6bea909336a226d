#include "artifact/acceptance.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
    std::string suite;
    for (int i = 1; i < argc; ++i)
        if (!std::strcmp(argv[i], "--suite") && i + 1 < argc) suite = argv[++i];
    auto results = artifact::run_acceptance(suite, std::cout);
    if (results.empty()) {
        std::cerr << "no suite named " << suite << "\n";
        return 2;
    }
    int failed = 0;
    for (const auto& r : results) failed += !r.pass;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
