#pragma once
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "satphase/error.hpp"
#include "satphase/instances.hpp"

namespace satphase {

CnfFormula parse_dimacs(const std::string& text);
std::string write_dimacs(const CnfFormula& f);

// two-column whitespace-separated edge list; first line "n m"
GraphInstance parse_edge_list(const std::string& text);
std::string write_edge_list(const GraphInstance& g);

// tabular output: CSV with '#' config-echo header lines, or JSON
// {"config": {...}, "records": [...]}; doubles carry 12 significant digits
using Cell = std::variant<double, long long, std::string>;

struct Record {
    std::vector<std::pair<std::string, Cell>> fields;
    Record& add(const std::string& key, double v);
    Record& add(const std::string& key, long long v);
    Record& add(const std::string& key, int v);
    Record& add(const std::string& key, const std::string& v);
};

std::string format_sig(double v);  // 12 significant digits

std::string to_csv(const std::vector<Record>& records, const Record& config);
std::string to_json_text(const std::vector<Record>& records, const Record& config);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// $SATPHASE_OUT overrides the default output directory "."
std::string default_out_dir();

}
