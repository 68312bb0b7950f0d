#include "eislab/selftest.hpp"
#include "eislab/threads.hpp"

#include <iostream>

int main() {
    eislab::apply_thread_env();
    int failures = eislab::selftest::run_acceptance(std::cout);
    if (failures) {
        std::cout << failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
