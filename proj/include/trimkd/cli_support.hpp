#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "trimkd/distributions.hpp"

namespace trimkd::cli {

enum class CsvFormat { single_column, named_column };

// Reads numeric values in file order. single_column accepts at most one
// non-numeric header row; named_column selects the column with the given
// header. Empty or non-numeric cells are hard errors naming the line.
std::vector<double> ingest_sample(const std::string& path, CsvFormat format,
                                  const std::string& column = "");

// Model grammar: `kind:param,param` with kinds uniform, normal, logistic,
// beta, and `mix:w;<left>;<right>` for mixtures (components may nest).
// Examples: `normal:0,1`  `mix:0.9;normal:0,1;normal:3,1`.
Distribution parse_model(const std::string& spec);

// Ordered key-value result envelope with embedded tables. Scalar floats
// print with 6 significant digits; identical configs and seeds reproduce
// byte-identical result fields.
class Envelope {
public:
    struct Table {
        std::string name;
        std::vector<std::string> columns;
        std::vector<std::vector<std::string>> rows;
        void add_row(std::vector<double> values);
        void add_row(std::vector<std::string> cells);
    };

    explicit Envelope(std::string command);

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::size_t value);
    void set(const std::string& key, bool value);
    Table& add_table(std::string name, std::vector<std::string> columns);

    void write(std::ostream& os) const;       // envelope format
    void write_csv(std::ostream& os) const;   // tables only, for plotting
    void write_to(const std::string& path, bool csv) const;

private:
    std::string command_;
    std::vector<std::pair<std::string, std::string>> fields_;
    std::vector<Table> tables_;
};

std::string format_double(double v);  // %.6g

}  // namespace trimkd::cli
