#pragma once
#include <stdexcept>
#include <string>

namespace satphase {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct domain_error : error {
    using error::error;
};

struct numeric_error : error {
    using error::error;
};

struct parse_error : error {
    int line;
    parse_error(const std::string& msg, int line_)
        : error(msg + " at line " + std::to_string(line_)), line(line_) {}
};

}
