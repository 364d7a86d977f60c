#pragma once

#include "heliox/errors.hpp"

#include <string>
#include <vector>

namespace heliox::io {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows; // each row matches columns

    void add_row(std::initializer_list<double> values);
};

// column contract of each named figure output
const std::vector<std::string>& figure_columns(const std::string& figure_id);

// full round-trip precision, byte-stable across runs
void write_csv(const std::string& path, const Table& table);

// validates the table against the figure contract before writing
void emit_figure_data(const std::string& out_dir, const std::string& figure_id,
                      const Table& table);

} // namespace heliox::io
