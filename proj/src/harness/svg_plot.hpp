#pragma once

#include <string>

namespace qmlp::harness {

/// Renders a history CSV (epoch,loss,accuracy) or a sweep CSV
/// (model_id,scale,loss,accuracy) as a standalone SVG with a loss panel and
/// an accuracy panel. Throws on malformed or empty input.
void cmd_plot(const std::string& csv_path, const std::string& out_svg);

}  // namespace qmlp::harness
