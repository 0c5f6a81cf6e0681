#pragma once

// JSON file formats, envelope CSV and SVG plots.

#include "lensrr/extension.hpp"
#include "lensrr/filtration.hpp"
#include "lensrr/step_function.hpp"
#include "lensrr/witness.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <variant>

namespace lensrr::io {

using Json = nlohmann::json;

/// {"n", "depth", "values"}; values are numbers or [x1, x2] pairs.
using AnyDyadic = std::variant<ScalarDyadic, PlanarDyadic>;
[[nodiscard]] AnyDyadic dyadic_from_json(const Json& j);
[[nodiscard]] Json to_json(const ScalarDyadic& f);
[[nodiscard]] Json to_json(const PlanarDyadic& f);

using AnyStep = std::variant<ScalarStep, PlanarStep>;
[[nodiscard]] AnyStep step_from_json(const Json& j);
[[nodiscard]] Json to_json(const ScalarStep& g);
[[nodiscard]] Json to_json(const PlanarStep& g);

/// {"levels": [[{"id", "measure", "parent"}]]}; parent is null on level 0.
[[nodiscard]] Json to_json(const Filtration& F);

[[nodiscard]] Json to_json(const WitnessReport& r);

[[nodiscard]] Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

void write_envelope_csv(std::ostream& os, const Envelope& env);

struct PlotData {
    Lens lens;
    std::optional<Lens> extension;
    std::vector<HigherSegment> segments;
    std::vector<Point2> envelope;
};

/// SVG 1.1; the viewport covers the band of the lens up to four times the
/// extension gauge.
void write_svg(std::ostream& os, const PlotData& data);

}  // namespace lensrr::io
