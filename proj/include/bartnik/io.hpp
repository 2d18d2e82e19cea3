#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bartnik/assembler.hpp"
#include "bartnik/error.hpp"
#include "bartnik/collar.hpp"
#include "bartnik/mass_bounds.hpp"
#include "bartnik/path.hpp"
#include "bartnik/profile.hpp"
#include "bartnik/radial_ode.hpp"
#include "bartnik/reduction.hpp"
#include "bartnik/types.hpp"

namespace bartnik::io {

using nlohmann::json;

/// 17 significant digits: round-trip exact for 64-bit floats.
std::string format_g17(double v);

void write_text(const std::string& path, const std::string& text);

// ---- CSV ----------------------------------------------------------------

std::string solution_csv(const RadialSolution& sol);
std::string collar_csv(const CollarSlab& slab);
std::string reduction_csv(const ReductionCollar& c);
std::string composite_csv(const ExtensionReport& rep);
std::string sweep_csv(const std::vector<SweepRow>& rows);

// ---- JSON reports --------------------------------------------------------

json data_json(const BartnikData& d);
json constants_json(const CollarSlab& slab);
json extension_json(const ExtensionReport& rep);
json bounds_json(const MassBoundReport& rep);
json reduction_json(const ReductionCollar& c);
json error_json(const Error& e);

// ---- SVG -----------------------------------------------------------------

struct Series {
  std::string name;
  std::vector<double> y;
};

/// Static multi-series line chart; deterministic bytes.
std::string svg_lines(const std::string& title, const std::vector<double>& x,
                      const std::vector<Series>& series);

// ---- Config parsing -------------------------------------------------------

/// Rejects unknown keys; context names the object in the error message.
void require_keys(const json& obj, const std::vector<std::string>& allowed,
                  const std::string& context);

double require_number(const json& obj, const std::string& key,
                      const std::string& context);

BartnikData parse_data(const json& j);
PathDescriptor parse_path(const json& j);
ProfileFunction parse_profile(const json& j, double r_anchor);

/// Loads a config file, enforcing the schema tag. Throws
/// Error{SchemaError} with line/column diagnostics on malformed JSON.
json load_config(const std::string& path);

}  // namespace bartnik::io
