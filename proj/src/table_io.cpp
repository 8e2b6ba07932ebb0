#include "quench/table_io.hpp"

#include <fstream>
#include <sstream>

#include "quench/errors.hpp"
#include "quench/format.hpp"

namespace quench {

namespace {

const std::vector<std::string> kStatColumns{"probability", "mean_Tq",  "var_Tq",        "std_error",
                                            "failures",    "n_realizations", "n_quenched"};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string opt_text(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

std::optional<double> opt_parse(const std::string& s) {
    if (trim(s).empty()) return std::nullopt;
    return parse_double(s);
}

}  // namespace

std::string table_csv(const SweepResult& r) {
    std::string out;
    for (const auto& a : r.axes) out += a + ',';
    for (std::size_t i = 0; i < kStatColumns.size(); ++i) out += (i ? "," : "") + kStatColumns[i];
    out += '\n';
    for (std::size_t k = 0; k < r.stats.size(); ++k) {
        for (double v : r.points[k]) out += format_double(v) + ',';
        const auto& s = r.stats[k];
        out += format_double(s.quench_probability) + ',' + opt_text(s.mean_Tq) + ',' +
               opt_text(s.var_Tq) + ',' + format_double(s.std_error_p) + ',' +
               std::to_string(s.failures) + ',' + std::to_string(s.n_realizations) + ',' +
               std::to_string(s.n_quenched) + '\n';
    }
    return out;
}

void emit_table(const SweepResult& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << table_csv(r);
    if (!out) throw IoError("write failed for '" + path + "'");
}

SweepResult parse_table(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw IoError("table is empty (no header)");
    auto header = split(line);
    if (header.size() < kStatColumns.size()) throw IoError("table header is too short");
    const std::size_t n_axes = header.size() - kStatColumns.size();
    for (std::size_t i = 0; i < kStatColumns.size(); ++i)
        if (header[n_axes + i] != kStatColumns[i])
            throw IoError("unexpected table column '" + header[n_axes + i] + "'");
    SweepResult r;
    r.axes.assign(header.begin(), header.begin() + static_cast<long>(n_axes));
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cells = split(line);
        if (cells.size() != header.size())
            throw IoError("table row " + std::to_string(lineno) + " has the wrong number of fields");
        try {
            std::vector<double> pt;
            for (std::size_t a = 0; a < n_axes; ++a) pt.push_back(parse_double(cells[a]));
            EnsembleStats s;
            s.quench_probability = parse_double(cells[n_axes]);
            s.mean_Tq = opt_parse(cells[n_axes + 1]);
            s.var_Tq = opt_parse(cells[n_axes + 2]);
            s.std_error_p = parse_double(cells[n_axes + 3]);
            s.failures = static_cast<long>(parse_int(cells[n_axes + 4]));
            s.n_realizations = static_cast<long>(parse_int(cells[n_axes + 5]));
            s.n_quenched = static_cast<long>(parse_int(cells[n_axes + 6]));
            r.points.push_back(std::move(pt));
            r.stats.push_back(s);
        } catch (const ParameterError& e) {
            throw IoError("table row " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return r;
}

}  // namespace quench
