#include "lapsel/table_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>

#include "lapsel/simplex.hpp"

namespace lapsel {

std::string format_double(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", x);
    return buffer;
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \r\n");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

struct RawTable {
    std::vector<std::vector<std::string>> rows; // header removed
    char delimiter = '\t';
};

// Reads a delimited text file; the delimiter is sniffed from the first
// nonempty line (tab wins over comma) and a header row is dropped when any
// of its non-leading cells fails to parse as a number.
RawTable read_raw_table(const std::filesystem::path& path, bool first_column_is_name) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());

    RawTable table;
    std::string line;
    std::size_t line_no = 0;
    bool delimiter_known = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string s = strip(line);
        if (s.empty() || s[0] == '#') continue;
        if (!delimiter_known) {
            table.delimiter = s.find('\t') != std::string::npos ? '\t' : ',';
            delimiter_known = true;
        }
        auto fields = split_line(s, table.delimiter);
        for (auto& f : fields) f = strip(f);
        if (table.rows.empty()) {
            // Header detection on the first data-bearing line.
            bool numeric = true;
            for (std::size_t i = first_column_is_name ? 1 : 0; i < fields.size(); ++i) {
                double v;
                if (!parse_double(fields[i], v)) {
                    numeric = false;
                    break;
                }
            }
            if (!numeric) continue;
        }
        table.rows.push_back(std::move(fields));
    }
    if (table.rows.empty()) {
        throw ParseError(path.string() + ": no data rows");
    }
    return table;
}

double parse_cell(const std::filesystem::path& path, const std::vector<std::string>& row,
                  std::size_t row_idx, std::size_t col_idx) {
    double v;
    if (!parse_double(row[col_idx], v)) {
        throw ParseError(path.string() + ": cannot parse \"" + row[col_idx] +
                         "\" at row " + std::to_string(row_idx) + ", column " +
                         std::to_string(col_idx));
    }
    return v;
}

} // namespace

Eigen::MatrixXd read_matrix(const std::filesystem::path& path) {
    RawTable table = read_raw_table(path, false);
    const std::size_t rows = table.rows.size();
    const std::size_t cols = table.rows.front().size();
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (table.rows[i].size() != cols) {
            throw ParseError(path.string() + ": row " + std::to_string(i) + " has " +
                             std::to_string(table.rows[i].size()) + " columns, expected " +
                             std::to_string(cols));
        }
        for (std::size_t j = 0; j < cols; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                parse_cell(path, table.rows[i], i, j);
        }
    }
    return m;
}

DistanceMatrix read_distance_matrix(const std::filesystem::path& path) {
    Eigen::MatrixXd m = read_matrix(path);
    if (m.rows() != m.cols()) {
        throw ParseError(path.string() + ": distance matrix must be square, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (m(i, i) != 0.0) {
            throw ParseError(path.string() + ": nonzero diagonal at (" + std::to_string(i) +
                             "," + std::to_string(i) + ")");
        }
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
            if (m(i, j) != m(j, i)) {
                throw ParseError(path.string() + ": asymmetric at (" + std::to_string(i) + "," +
                                 std::to_string(j) + "): " + format_double(m(i, j)) + " vs " +
                                 format_double(m(j, i)));
            }
            if (!(m(i, j) >= 0.0)) {
                throw ParseError(path.string() + ": negative distance at (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
            }
        }
    }
    return DistanceMatrix(std::move(m));
}

FeatureSet read_point_features(const std::filesystem::path& path) {
    RawTable table = read_raw_table(path, true);
    std::vector<std::string> names;
    std::vector<Eigen::VectorXd> rows;
    names.reserve(table.rows.size());
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& fields = table.rows[i];
        if (fields.size() < 2) {
            throw ParseError(path.string() + ": feature row " + std::to_string(i) +
                             " needs a name and at least one value");
        }
        names.push_back(fields[0]);
        Eigen::VectorXd values(fields.size() - 1);
        for (std::size_t j = 1; j < fields.size(); ++j) {
            values[static_cast<Eigen::Index>(j - 1)] = parse_cell(path, fields, i, j);
        }
        rows.push_back(std::move(values));
    }
    return FeatureSet::from_rows(std::move(names), std::move(rows));
}

FeatureSet read_pair_features(const std::filesystem::path& path) {
    RawTable table = read_raw_table(path, true);
    const std::size_t cols = table.rows.front().size();
    if (cols != 3 && cols != 4) {
        throw ParseError(path.string() + ": pair features need columns (i, j, value) or "
                                         "(name, i, j, value)");
    }
    const bool named = cols == 4;

    std::vector<std::string> names;
    std::map<std::string, std::size_t> name_index;
    std::vector<QPointTable> tables;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& fields = table.rows[r];
        if (fields.size() != cols) {
            throw ParseError(path.string() + ": row " + std::to_string(r) +
                             " has inconsistent column count");
        }
        const std::string name = named ? fields[0] : "pairs";
        const std::size_t base = named ? 1 : 0;
        double iv = parse_cell(path, fields, r, base);
        double jv = parse_cell(path, fields, r, base + 1);
        double value = parse_cell(path, fields, r, base + 2);
        auto i = static_cast<VertexId>(iv);
        auto j = static_cast<VertexId>(jv);
        if (static_cast<double>(i) != iv || static_cast<double>(j) != jv || i < 0 || j <= i) {
            throw ParseError(path.string() + ": row " + std::to_string(r) +
                             " needs integer sample indices with i < j");
        }
        auto it = name_index.find(name);
        if (it == name_index.end()) {
            it = name_index.emplace(name, tables.size()).first;
            names.push_back(name);
            tables.emplace_back(2);
        }
        tables[it->second].set({i, j}, value);
    }
    return FeatureSet::from_tables(std::move(names), std::move(tables));
}

void write_score_report(std::ostream& out, const ScoreReport& report) {
    out << "# epsilon=" << (report.epsilon ? format_double(*report.epsilon) : "none")
        << "\tn_permutations=" << report.n_permutations << "\tseed=" << report.seed
        << "\talpha=" << format_double(report.alpha) << "\tweights=" << report.weight_scheme
        << '\n';
    out << "feature\tq\tscore\tp_value\tq_value\trejected\n";
    for (const auto& row : report.rows) {
        out << row.feature << '\t' << row.q << '\t';
        if (row.valid) {
            out << format_double(row.score) << '\t' << format_double(row.p_value) << '\t'
                << format_double(row.q_value) << '\t' << (row.rejected ? 1 : 0);
        } else {
            out << "NA\tNA\tNA\t0";
        }
        out << '\n';
    }
}

void write_sweep_result(std::ostream& out, const SweepResult& sweep) {
    out << "epsilon\tn_edges\tn_rejected\n";
    for (const auto& row : sweep.rows) {
        out << format_double(row.epsilon) << '\t' << row.n_edges << '\t' << row.n_rejected
            << '\n';
    }
}

void write_eigenmap(std::ostream& out, const SimplicialComplex& k, int q,
                    const Eigen::MatrixXd& coords) {
    out << "simplex";
    for (Eigen::Index j = 0; j < coords.cols(); ++j) out << "\ty" << (j + 1);
    out << '\n';
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
        out << simplex_label(k.simplex(q, i));
        for (Eigen::Index j = 0; j < coords.cols(); ++j) {
            out << '\t' << format_double(coords(i, j));
        }
        out << '\n';
    }
}

} // namespace lapsel
