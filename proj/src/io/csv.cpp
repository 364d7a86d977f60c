#include "heliox/io/csv.hpp"

#include <cstdio>
#include <fstream>
#include <map>

namespace heliox::io {

void Table::add_row(std::initializer_list<double> values) {
    if (values.size() != columns.size())
        throw ValidationError("Table: row width does not match the header");
    rows.emplace_back(values);
}

const std::vector<std::string>& figure_columns(const std::string& figure_id) {
    static const std::map<std::string, std::vector<std::string>> contracts = {
        {"fig1c", {"pressure_bar", "R_nm", "U_eV"}},
        {"fig2a", {"pressure_bar", "E_1S_eV", "E_1P_eV", "E_2S_eV", "U_eV"}},
        {"fig2b",
         {"pressure_bar", "lambda_1S1P_um", "lambda_1P2S_um", "lambda_1S2S_2photon_um"}},
        {"fig3a", {"t_fs", "field_VperNm", "pop_1S", "pop_1P", "leakage"}},
        {"fig3b", {"t_fs", "field_VperNm", "pop_1S", "pop_1P", "leakage"}},
        {"fig3c", {"t_fs", "field_VperNm", "pop_1S", "pop_1P", "leakage"}},
        {"fig4c", {"t_ps", "pop_photon_in_cavity", "pop_photon_in_bubble"}},
        {"fig5a", {"t_ns", "pop_SE", "pop_AE", "concurrence"}},
        {"fig5b", {"t_ns", "pop_SE", "pop_AE", "concurrence"}},
        {"fig6a", {"t_fs", "pop_1S", "pop_2S", "pop_1P", "leakage"}},
        {"fig6c", {"t_ps", "R_nm"}},
        {"sweep",
         {"pressure_bar", "n_bulk_nm3", "mu_eV", "U_eV", "R_nm", "E_1S_eV", "E_1P_eV",
          "E_2S_eV", "lambda_1S1P_um", "lambda_1S2S_2photon_um", "d_1S1P_enm"}},
        {"eos", {"pressure_bar", "n_bulk_nm3", "mu_eV", "U_eV"}},
    };
    auto it = contracts.find(figure_id);
    if (it == contracts.end())
        throw ValidationError("unknown figure id: " + figure_id);
    return it->second;
}

void write_csv(const std::string& path, const Table& table) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path);
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    char buf[64];
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw ValidationError("write_csv: ragged row");
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", row[c]);
            out << (c ? "," : "") << buf;
        }
        out << '\n';
    }
}

void emit_figure_data(const std::string& out_dir, const std::string& figure_id,
                      const Table& table) {
    if (table.columns != figure_columns(figure_id))
        throw ValidationError("figure data does not match the " + figure_id +
                              " column contract");
    write_csv(out_dir + "/" + figure_id + ".csv", table);
}

} // namespace heliox::io
