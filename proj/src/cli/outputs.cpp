#include "scfgame/cli/outputs.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace scfgame::cli {

using nlohmann::ordered_json;

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string format_short(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

namespace {

std::string fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, value);
  return buffer;
}

}  // namespace

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "t,x,y,z\n";
  for (const auto& sample : trajectory.samples) {
    out += fixed(sample.t, 6);
    out += ',';
    out += fixed(sample.state.x, 12);
    out += ',';
    out += fixed(sample.state.y, 12);
    out += ',';
    out += fixed(sample.state.z, 12);
    out += '\n';
  }
  return out;
}

namespace {

constexpr int kPanelSize = 280;
constexpr int kPanelPad = 46;
constexpr int kPanelGap = 24;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Panel {
  int origin_x;
  int origin_y;
  const char* h_label;
  const char* v_label;
  double StrategyState::* h;
  double StrategyState::* v;
};

std::string svg_coord(double value) { return fixed(value, 2); }

void draw_panel_frame(std::string& svg, const Panel& panel) {
  std::ostringstream out;
  const int x0 = panel.origin_x;
  const int y0 = panel.origin_y;
  out << "  <rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\""
      << kPanelSize << "\" height=\"" << kPanelSize
      << "\" fill=\"white\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  for (int i = 1; i < 4; ++i) {
    const double offset = kPanelSize * i / 4.0;
    out << "  <line x1=\"" << svg_coord(x0 + offset) << "\" y1=\"" << y0
        << "\" x2=\"" << svg_coord(x0 + offset) << "\" y2=\""
        << y0 + kPanelSize
        << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    out << "  <line x1=\"" << x0 << "\" y1=\"" << svg_coord(y0 + offset)
        << "\" x2=\"" << x0 + kPanelSize << "\" y2=\""
        << svg_coord(y0 + offset)
        << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
  }
  out << "  <text x=\"" << x0 + kPanelSize / 2 << "\" y=\""
      << y0 + kPanelSize + 30
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << panel.h_label << "</text>\n";
  out << "  <text x=\"" << x0 - 28 << "\" y=\"" << y0 + kPanelSize / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 " << x0 - 28 << " "
      << y0 + kPanelSize / 2 << ")\">" << panel.v_label << "</text>\n";
  out << "  <text x=\"" << x0 << "\" y=\"" << y0 + kPanelSize + 14
      << "\" font-family=\"sans-serif\" font-size=\"10\">0</text>\n";
  out << "  <text x=\"" << x0 + kPanelSize << "\" y=\""
      << y0 + kPanelSize + 14
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"10\">1</text>\n";
  svg += out.str();
}

}  // namespace

std::string phase_plot_svg(const std::vector<Trajectory>& trajectories) {
  const Panel panels[3] = {
      {kPanelPad, kPanelPad, "x", "y", &StrategyState::x, &StrategyState::y},
      {kPanelPad + (kPanelSize + kPanelGap + kPanelPad), kPanelPad, "x", "z",
       &StrategyState::x, &StrategyState::z},
      {kPanelPad + 2 * (kPanelSize + kPanelGap + kPanelPad), kPanelPad, "y",
       "z", &StrategyState::y, &StrategyState::z},
  };
  const int width = kPanelPad + 3 * (kPanelSize + kPanelGap + kPanelPad);
  const int height = kPanelSize + 2 * kPanelPad + 20;

  std::string svg;
  {
    std::ostringstream head;
    head << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
         << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
         << height << "\">\n";
    svg += head.str();
  }

  // distinct attractors among converged trajectories, in deterministic order
  std::set<std::array<double, 3>> attractors;
  for (const auto& traj : trajectories) {
    if (traj.converged()) {
      attractors.insert({traj.attractor.x, traj.attractor.y,
                         traj.attractor.z});
    }
  }

  for (const auto& panel : panels) {
    draw_panel_frame(svg, panel);
    auto px = [&](const StrategyState& s) {
      return panel.origin_x + (s.*panel.h) * kPanelSize;
    };
    auto py = [&](const StrategyState& s) {
      return panel.origin_y + (1.0 - s.*panel.v) * kPanelSize;
    };

    std::size_t index = 0;
    for (const auto& traj : trajectories) {
      const char* color =
          kPalette[index++ % (sizeof(kPalette) / sizeof(kPalette[0]))];
      std::ostringstream path;
      path << "  <polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.2\" opacity=\"0.85\" points=\"";
      for (const auto& sample : traj.samples) {
        path << svg_coord(px(sample.state)) << ','
             << svg_coord(py(sample.state)) << ' ';
      }
      path << "\"/>\n";
      svg += path.str();

      const StrategyState& start = traj.samples.front().state;
      std::ostringstream marker;
      marker << "  <circle cx=\"" << svg_coord(px(start)) << "\" cy=\""
             << svg_coord(py(start)) << "\" r=\"2.5\" fill=\"white\" stroke=\""
             << color << "\" stroke-width=\"1\"/>\n";
      svg += marker.str();
    }

    for (const auto& a : attractors) {
      const StrategyState s{a[0], a[1], a[2]};
      std::ostringstream marker;
      marker << "  <circle cx=\"" << svg_coord(px(s)) << "\" cy=\""
             << svg_coord(py(s))
             << "\" r=\"5\" fill=\"#000000\" stroke=\"#ffffff\" "
                "stroke-width=\"1.5\"/>\n";
      svg += marker.str();
    }
  }

  svg += "</svg>\n";
  return svg;
}

ordered_json params_json(const ModelParams& p) {
  ordered_json doc;
  doc["R1"] = p.R1;
  doc["R2"] = p.R2;
  doc["R3"] = p.R3;
  doc["C1"] = p.C1;
  doc["C2"] = p.C2;
  doc["C3"] = p.C3;
  doc["m1"] = p.m1;
  doc["m2"] = p.m2;
  doc["m3"] = p.m3;
  doc["r"] = p.r;
  doc["theta"] = p.theta;
  doc["K"] = p.K;
  doc["I1"] = p.I1;
  doc["I2"] = p.I2;
  doc["S"] = p.S;
  return doc;
}

ordered_json state_json(const StrategyState& state) {
  return ordered_json::array({state.x, state.y, state.z});
}

ordered_json ess_report_json(const EssConditionReport& report) {
  ordered_json conditions = ordered_json::array();
  for (const auto& cond : report.conditions) {
    ordered_json entry;
    entry["label"] = cond.label;
    entry["lhs"] = cond.lhs;
    entry["rhs"] = cond.rhs;
    entry["margin"] = cond.margin;
    entry["satisfied"] = cond.satisfied;
    if (!cond.note.empty()) entry["note"] = cond.note;
    conditions.push_back(entry);
  }
  ordered_json doc;
  doc["conditions"] = conditions;
  doc["all_satisfied"] = report.all_satisfied();
  return doc;
}

ordered_json stability_report_json(
    const ModelParams& params,
    const std::vector<ClassifiedEquilibrium>& equilibria,
    const EssConditionReport& ess) {
  ordered_json list = ordered_json::array();
  for (const auto& entry : equilibria) {
    ordered_json node;
    node["point"] = state_json(entry.equilibrium.point);
    node["kind"] = to_string(entry.equilibrium.kind);
    if (entry.equilibrium.vertex_index > 0) {
      node["vertex_index"] = entry.equilibrium.vertex_index;
    }
    ordered_json eigen = ordered_json::array();
    for (const auto& lambda : entry.stability.eigenvalues) {
      eigen.push_back({{"re", lambda.real()}, {"im", lambda.imag()}});
    }
    node["eigenvalues"] = eigen;
    node["class"] = to_string(entry.stability.kind);
    list.push_back(node);
  }

  ordered_json doc;
  doc["params"] = params_json(params);
  doc["equilibria"] = list;
  doc["ess_conditions"] = ess_report_json(ess);
  doc["model_tag"] = ess.model_tag;
  return doc;
}

ordered_json compare_report_json(const ModelParams& params,
                                 const ModelComparison& cmp) {
  ordered_json doc;
  doc["params"] = params_json(params);
  doc["baseline"] = ess_report_json(cmp.baseline);
  doc["baseline"]["model_tag"] = cmp.baseline.model_tag;
  doc["baseline"]["e8_is_ess"] = cmp.baseline_e8_ess;
  doc["blockchain"] = ess_report_json(cmp.blockchain);
  doc["blockchain"]["model_tag"] = cmp.blockchain.model_tag;
  doc["blockchain"]["e8_is_ess"] = cmp.blockchain_e8_ess;
  doc["margin_shifts"] = cmp.margin_shifts;
  doc["e8_flip"] = cmp.baseline_e8_ess != cmp.blockchain_e8_ess;
  doc["pareto_flag"] = cmp.pareto_flag;
  return doc;
}

ordered_json basin_report_json(const ModelParams& params,
                               const BasinReport& report) {
  ordered_json attractors = ordered_json::array();
  for (const auto& [point, count] : report.attractor_counts) {
    ordered_json entry;
    entry["point"] = ordered_json::array({point[0], point[1], point[2]});
    entry["count"] = count;
    entry["share"] = static_cast<double>(count) /
                     static_cast<double>(report.total_samples);
    attractors.push_back(entry);
  }
  ordered_json doc;
  doc["params"] = params_json(params);
  doc["seed"] = report.seed;
  doc["total_samples"] = report.total_samples;
  doc["unresolved"] = report.unresolved;
  doc["attractors"] = attractors;
  return doc;
}

std::string basin_report_csv(const BasinReport& report) {
  std::string out = "x,y,z,count,share\n";
  for (const auto& [point, count] : report.attractor_counts) {
    out += format_double(point[0]);
    out += ',';
    out += format_double(point[1]);
    out += ',';
    out += format_double(point[2]);
    out += ',';
    out += std::to_string(count);
    out += ',';
    out += format_double(static_cast<double>(count) /
                         static_cast<double>(report.total_samples));
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path fs_path(path);
  if (fs_path.has_parent_path()) {
    std::filesystem::create_directories(fs_path.parent_path());
  }
  std::ofstream out(fs_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + path);
  }
  out.write(content.data(),
            static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw std::runtime_error("failed writing output file: " + path);
  }
}

}  // namespace scfgame::cli
