#pragma once

#include "heliox/dft/params.hpp"
#include "heliox/io/config.hpp"

#include <string>

namespace heliox::io {

// Calibrated coefficients: from the file named by HELIOX_DEFAULTS (or the
// explicit path) when present, otherwise calibrated at startup against the
// standard helium saturation targets with the configured scattering length.
dft::DftParams load_params(double scattering_length_nm,
                           const std::string& defaults_path = "");

json params_to_json(const dft::DftParams& params);
dft::DftParams params_from_json(const json& j);
void write_defaults_file(const std::string& path, const dft::DftParams& params);

// Executes one resolved scenario config, writing CSV artifacts and
// summary.json into out_dir.  Returns the summary document.  Throws the
// usual error taxonomy; the CLI maps it onto exit codes.
json run_scenario(const std::string& scenario, const json& resolved,
                  const std::string& out_dir, int workers,
                  const std::string& defaults_path = "");

} // namespace heliox::io
