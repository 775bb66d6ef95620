#include "satphase/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace satphase {

CnfFormula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int declared_n = -1, declared_m = -1;
    CnfFormula f;
    std::vector<int> clause;
    bool clause_open = false;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "p") {
            if (declared_n >= 0)
                throw parse_error("duplicate problem line", lineno);
            std::string kind;
            if (!(ls >> kind) || kind != "cnf")
                throw parse_error("expected 'p cnf n m'", lineno);
            if (!(ls >> declared_n >> declared_m) || declared_n < 0 ||
                declared_m < 0)
                throw parse_error("bad problem line counts", lineno);
            continue;
        }
        if (declared_n < 0)
            throw parse_error("clause before the problem line", lineno);
        ls.clear();
        ls.str(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                f.clauses.push_back(clause);
                clause.clear();
                clause_open = false;
                continue;
            }
            int v = lit > 0 ? lit : -lit;
            if (v > declared_n)
                throw parse_error("literal " + std::to_string(lit) +
                                      " out of range",
                                  lineno);
            clause.push_back(lit);
            clause_open = true;
        }
        if (!ls.eof()) throw parse_error("unreadable token", lineno);
    }
    if (clause_open)
        throw parse_error("unterminated clause at end of input", lineno);
    if (static_cast<int>(f.clauses.size()) != declared_m)
        throw parse_error("clause count " + std::to_string(f.clauses.size()) +
                              " does not match header m = " +
                              std::to_string(declared_m),
                          lineno);
    f.n = declared_n;
    return f;
}

std::string write_dimacs(const CnfFormula& f) {
    std::string out = "p cnf " + std::to_string(f.n) + " " +
                      std::to_string(f.clauses.size()) + "\n";
    for (const auto& cl : f.clauses) {
        for (int lit : cl) {
            out += std::to_string(lit);
            out += ' ';
        }
        out += "0\n";
    }
    return out;
}

GraphInstance parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    GraphInstance g;
    long long declared_m = -1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "#") continue;
        ls.clear();
        ls.str(line);
        if (declared_m < 0) {
            long long n;
            if (!(ls >> n >> declared_m) || n < 0 || declared_m < 0)
                throw parse_error("expected 'n m' header", lineno);
            g.n = static_cast<int>(n);
            continue;
        }
        int a, b;
        if (!(ls >> a >> b)) throw parse_error("expected 'u v' edge", lineno);
        if (a < 1 || a > g.n || b < 1 || b > g.n)
            throw parse_error("endpoint out of range", lineno);
        g.edges.emplace_back(a, b);
    }
    if (declared_m < 0) throw parse_error("missing 'n m' header", lineno);
    if (static_cast<long long>(g.edges.size()) != declared_m)
        throw parse_error("edge count " + std::to_string(g.edges.size()) +
                              " does not match header m = " +
                              std::to_string(declared_m),
                          lineno);
    return g;
}

std::string write_edge_list(const GraphInstance& g) {
    std::string out = std::to_string(g.n) + " " +
                      std::to_string(g.edges.size()) + "\n";
    for (auto [a, b] : g.edges)
        out += std::to_string(a) + " " + std::to_string(b) + "\n";
    return out;
}

Record& Record::add(const std::string& key, double v) {
    fields.emplace_back(key, Cell(v));
    return *this;
}
Record& Record::add(const std::string& key, long long v) {
    fields.emplace_back(key, Cell(v));
    return *this;
}
Record& Record::add(const std::string& key, int v) {
    fields.emplace_back(key, Cell(static_cast<long long>(v)));
    return *this;
}
Record& Record::add(const std::string& key, const std::string& v) {
    fields.emplace_back(key, Cell(v));
    return *this;
}

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<double>(c))
        return format_sig(std::get<double>(c));
    if (std::holds_alternative<long long>(c))
        return std::to_string(std::get<long long>(c));
    return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
    if (std::holds_alternative<double>(c)) {
        // route through the 12-digit text so JSON and CSV agree exactly
        return nlohmann::json::parse(format_sig(std::get<double>(c)));
    }
    if (std::holds_alternative<long long>(c))
        return std::get<long long>(c);
    return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const std::vector<Record>& records, const Record& config) {
    std::string out;
    for (const auto& [k, v] : config.fields)
        out += "# " + k + " = " + cell_text(v) + "\n";
    if (records.empty()) return out;
    const auto& cols = records.front().fields;
    for (size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i].first;
    }
    out += '\n';
    for (const auto& r : records) {
        if (r.fields.size() != cols.size())
            throw domain_error("to_csv: ragged records");
        for (size_t i = 0; i < r.fields.size(); ++i) {
            if (r.fields[i].first != cols[i].first)
                throw domain_error("to_csv: column order differs between records");
            if (i) out += ',';
            out += cell_text(r.fields[i].second);
        }
        out += '\n';
    }
    return out;
}

std::string to_json_text(const std::vector<Record>& records,
                         const Record& config) {
    nlohmann::json root;
    nlohmann::json conf = nlohmann::json::object();
    for (const auto& [k, v] : config.fields) conf[k] = cell_json(v);
    root["config"] = conf;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json obj = nlohmann::json::object();
        for (const auto& [k, v] : r.fields) obj[k] = cell_json(v);
        arr.push_back(obj);
    }
    root["records"] = arr;
    return root.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open for writing: " + path);
    out << content;
    if (!out) throw error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string default_out_dir() {
    const char* env = std::getenv("SATPHASE_OUT");
    return env && *env ? env : ".";
}

}  // namespace satphase
