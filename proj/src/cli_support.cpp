#include "trimkd/cli_support.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "trimkd/errors.hpp"

namespace trimkd::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_number(const std::string& cell, double& out) {
    const std::string t = trim(cell);
    if (t.empty()) return false;
    const char* begin = t.data();
    const char* end = begin + t.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

}  // namespace

std::vector<double> ingest_sample(const std::string& path, CsvFormat format,
                                  const std::string& column) {
    std::ifstream is(path);
    if (!is) throw data_error("cannot open input file: " + path);

    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    std::size_t col_index = 0;
    bool header_seen = false;

    if (format == CsvFormat::named_column) {
        if (!std::getline(is, line)) throw data_error(path + ": empty file");
        ++line_no;
        const auto names = split(line, ',');
        bool found = false;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (trim(names[i]) == column) {
                col_index = i;
                found = true;
                break;
            }
        }
        if (!found) throw data_error(path + ": no column named '" + column + "'");
    }

    while (std::getline(is, line)) {
        ++line_no;
        if (trim(line).empty()) {
            if (is.peek() == std::char_traits<char>::eof()) break;  // trailing newline
            throw data_error(path + ": empty row at line " + std::to_string(line_no));
        }
        const auto cells = split(line, ',');
        if (format == CsvFormat::named_column && col_index >= cells.size())
            throw data_error(path + ": line " + std::to_string(line_no) + " has too few columns");
        const std::string& cell = cells[format == CsvFormat::named_column ? col_index : 0];
        double v;
        if (!parse_number(cell, v)) {
            if (format == CsvFormat::single_column && values.empty() && !header_seen) {
                header_seen = true;  // one header row allowed
                continue;
            }
            throw data_error(path + ": unparseable cell '" + trim(cell) + "' at line " +
                             std::to_string(line_no));
        }
        values.push_back(v);
    }
    if (values.empty()) throw data_error(path + ": no numeric rows");
    return values;
}

namespace {

Distribution parse_model_tokens(const std::vector<std::string>& tokens, std::size_t& pos) {
    if (pos >= tokens.size()) throw parameter_error("model spec: missing component");
    const std::string tok = trim(tokens[pos++]);
    const auto colon = tok.find(':');
    if (colon == std::string::npos) throw parameter_error("model spec: expected kind:params in '" + tok + "'");
    const std::string kind = tok.substr(0, colon);
    const std::string params = tok.substr(colon + 1);

    if (kind == "mix") {
        double w;
        if (!parse_number(params, w)) throw parameter_error("model spec: bad mixture weight '" + params + "'");
        Distribution left = parse_model_tokens(tokens, pos);
        Distribution right = parse_model_tokens(tokens, pos);
        return Distribution::mixture(w, std::move(left), std::move(right));
    }

    const auto parts = split(params, ',');
    if (parts.size() != 2) throw parameter_error("model spec: '" + kind + "' needs two parameters");
    double p0, p1;
    if (!parse_number(parts[0], p0) || !parse_number(parts[1], p1))
        throw parameter_error("model spec: bad parameters in '" + tok + "'");

    if (kind == "uniform") return Distribution::uniform(p0, p1);
    if (kind == "normal") return Distribution::normal(p0, p1);
    if (kind == "logistic") return Distribution::logistic(p0, p1);
    if (kind == "beta") return Distribution::beta(p0, p1);
    throw parameter_error("model spec: unknown kind '" + kind + "'");
}

}  // namespace

Distribution parse_model(const std::string& spec) {
    const auto tokens = split(spec, ';');
    std::size_t pos = 0;
    Distribution model = parse_model_tokens(tokens, pos);
    if (pos != tokens.size()) throw parameter_error("model spec: trailing components in '" + spec + "'");
    return model;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

}  // namespace

void Envelope::Table::add_row(std::vector<double> values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_double(v));
    rows.push_back(std::move(row));
}

void Envelope::Table::add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }

Envelope::Envelope(std::string command) : command_(std::move(command)) {}

void Envelope::set(const std::string& key, const std::string& value) { fields_.emplace_back(key, value); }
void Envelope::set(const std::string& key, double value) { fields_.emplace_back(key, format_double(value)); }
void Envelope::set(const std::string& key, std::size_t value) {
    fields_.emplace_back(key, std::to_string(value));
}
void Envelope::set(const std::string& key, bool value) {
    fields_.emplace_back(key, value ? "true" : "false");
}

Envelope::Table& Envelope::add_table(std::string name, std::vector<std::string> columns) {
    tables_.push_back(Table{std::move(name), std::move(columns), {}});
    return tables_.back();
}

void Envelope::write(std::ostream& os) const {
    os << "command = " << command_ << "\n";
    for (const auto& [k, v] : fields_) os << k << " = " << v << "\n";
    for (const auto& t : tables_) {
        os << "[table " << t.name << "]\n";
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            os << t.columns[c] << (c + 1 < t.columns.size() ? "," : "");
        os << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << row[c] << (c + 1 < row.size() ? "," : "");
            os << "\n";
        }
        os << "[/table]\n";
    }
}

void Envelope::write_csv(std::ostream& os) const {
    for (const auto& t : tables_) {
        os << "# table:" << t.name << "\n";
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            os << t.columns[c] << (c + 1 < t.columns.size() ? "," : "");
        os << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << row[c] << (c + 1 < row.size() ? "," : "");
            os << "\n";
        }
    }
}

void Envelope::write_to(const std::string& path, bool csv) const {
    std::ofstream os(path);
    if (!os) throw data_error("cannot open output file: " + path);
    csv ? write_csv(os) : write(os);
}

}  // namespace trimkd::cli
