#include "freeride/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "freeride/errors.hpp"
#include "freeride/theory.hpp"

namespace freeride {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string metrics_csv(const MetricsSeries& s) {
  std::ostringstream os;
  os << "replica_count,t,player,cum_pseudo_regret_mean,cum_pseudo_regret_std,"
        "cum_realized_regret_mean,cum_realized_regret_std";
  for (std::size_t i = 0; i < s.num_arms; ++i) os << ",arm_count_mean_" << (i + 1);
  os << "\n";
  for (std::size_t c = 0; c < s.checkpoints.size(); ++c) {
    for (std::size_t p = 0; p < s.num_players; ++p) {
      os << s.replicas << ',' << s.checkpoints[c] << ',' << (p + 1) << ','
         << fmt9(s.pseudo_mean[c][p]) << ',' << fmt9(s.pseudo_std[c][p]) << ','
         << fmt9(s.realized_mean[c][p]) << ',' << fmt9(s.realized_std[c][p]);
      for (std::size_t i = 0; i < s.num_arms; ++i) os << ',' << fmt9(s.count_mean[c][p][i]);
      os << "\n";
    }
  }
  return os.str();
}

namespace {

const char* kPalette[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d68910",
                          "#16a085", "#7f8c8d", "#2c3e50", "#af601a", "#884ea0"};

struct ChartGeometry {
  double width = 860, height = 480;
  double left = 70, right = 20, top = 24, bottom = 46;
  double plot_w() const { return width - left - right; }
  double plot_h() const { return height - top - bottom; }
};

}  // namespace

std::string regret_svg(const MetricsSeries& s) {
  const ChartGeometry g;
  const std::size_t nc = s.checkpoints.size();
  double y_max = 1.0, y_min = 0.0;
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t p = 0; p < s.num_players; ++p) {
      const double v = s.realized_mean[c][p];
      if (std::isfinite(v)) {
        y_max = std::max(y_max, v);
        y_min = std::min(y_min, v);
      }
    }
  const double x_min = std::log10(1.0);
  const double x_max = std::log10(static_cast<double>(std::max<std::uint64_t>(
      s.checkpoints.empty() ? 10 : s.checkpoints.back(), 10)));
  auto x_of = [&](std::uint64_t t) {
    const double lx = std::log10(static_cast<double>(std::max<std::uint64_t>(t, 1)));
    return g.left + (lx - x_min) / (x_max - x_min) * g.plot_w();
  };
  auto y_of = [&](double v) {
    return g.top + (y_max - v) / (y_max - y_min + 1e-12) * g.plot_h();
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g.width << "\" height=\""
     << g.height << "\" viewBox=\"0 0 " << g.width << " " << g.height << "\">\n";
  os << "  <rect width=\"" << g.width << "\" height=\"" << g.height << "\" fill=\"white\"/>\n";
  // Axes.
  os << "  <line x1=\"" << g.left << "\" y1=\"" << (g.top + g.plot_h()) << "\" x2=\""
     << (g.left + g.plot_w()) << "\" y2=\"" << (g.top + g.plot_h())
     << "\" stroke=\"black\"/>\n";
  os << "  <line x1=\"" << g.left << "\" y1=\"" << g.top << "\" x2=\"" << g.left << "\" y2=\""
     << (g.top + g.plot_h()) << "\" stroke=\"black\"/>\n";
  // Decade ticks on the x axis.
  for (double e = 0.0; e <= x_max + 1e-9; e += 1.0) {
    const double x = g.left + (e - x_min) / (x_max - x_min) * g.plot_w();
    os << "  <line x1=\"" << x << "\" y1=\"" << (g.top + g.plot_h()) << "\" x2=\"" << x
       << "\" y2=\"" << (g.top + g.plot_h() + 5) << "\" stroke=\"black\"/>\n";
    os << "  <text x=\"" << x << "\" y=\"" << (g.top + g.plot_h() + 20)
       << "\" font-size=\"12\" text-anchor=\"middle\">1e" << static_cast<int>(e)
       << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double v = y_min + (y_max - y_min) * i / 4.0;
    const double y = y_of(v);
    os << "  <text x=\"" << (g.left - 8) << "\" y=\"" << (y + 4)
       << "\" font-size=\"12\" text-anchor=\"end\">" << fmt9(v) << "</text>\n";
  }
  os << "  <text x=\"" << (g.left + g.plot_w() / 2) << "\" y=\"" << (g.height - 8)
     << "\" font-size=\"13\" text-anchor=\"middle\">round</text>\n";
  os << "  <text x=\"16\" y=\"" << (g.top + g.plot_h() / 2)
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (g.top + g.plot_h() / 2) << ")\">mean realized regret</text>\n";

  // Subsample to at most 500 points per series.
  const std::size_t stride = std::max<std::size_t>(1, nc / 500);
  for (std::size_t p = 0; p < s.num_players; ++p) {
    os << "  <polyline fill=\"none\" stroke=\"" << kPalette[p % 10]
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t c = 0; c < nc; c += stride) {
      const double v = s.realized_mean[c][p];
      if (!std::isfinite(v)) continue;
      os << fmt9(x_of(s.checkpoints[c])) << ',' << fmt9(y_of(v)) << ' ';
    }
    if (nc > 0 && (nc - 1) % stride != 0 && std::isfinite(s.realized_mean[nc - 1][p]))
      os << fmt9(x_of(s.checkpoints[nc - 1])) << ',' << fmt9(y_of(s.realized_mean[nc - 1][p]));
    os << "\"/>\n";
    os << "  <text x=\"" << (g.left + 10) << "\" y=\"" << (g.top + 14 + 16 * p)
       << "\" font-size=\"12\" fill=\"" << kPalette[p % 10] << "\">player " << (p + 1)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string summary_text(const SimulationConfig& config, const MetricsSeries& s) {
  std::ostringstream os;
  const std::size_t last = s.checkpoints.size() - 1;
  os << "players: " << s.num_players << "  arms: " << s.num_arms
     << "  horizon: " << s.checkpoints[last] << "  replicas: " << s.replicas << "\n\n";
  os << "final regrets (mean +- std across replicas):\n";
  for (std::size_t p = 0; p < s.num_players; ++p) {
    os << "  player " << (p + 1) << " [" << to_string(config.players[p].kind) << "]"
       << "  pseudo " << fmt9(s.pseudo_mean[last][p]) << " +- " << fmt9(s.pseudo_std[last][p])
       << "  realized " << fmt9(s.realized_mean[last][p]) << " +- "
       << fmt9(s.realized_std[last][p]) << "\n";
  }

  const PlayerGaps gaps = player_gaps(config.bandit, config.players.size());
  os << "\nscenario constants:\n";
  os << "  player-1 gap: " << fmt9(gaps.gaps[0]) << "\n";
  if (gaps.gaps[0] > 0.0 && gaps.gaps[0] <= 2.0) {
    os << "  gamma_threshold_stochastic(gap) = "
       << fmt9(gamma_threshold_stochastic(gaps.gaps[0])) << "\n";
  }
  for (const PolicySpec& spec : config.players) {
    if (spec.kind == PolicyKind::UcbMeanGreedy && gaps.gaps[0] > 0.0) {
      os << "  gamma_threshold_contextual(c, gap) = "
         << fmt9(gamma_threshold_contextual(spec.coefficients, gaps.gaps[0]))
         << "  (policy gamma = " << fmt9(spec.gamma) << ")\n";
    }
    if (spec.kind == PolicyKind::Samg && gaps.gaps[0] > 0.0 && gaps.gaps[0] <= 2.0) {
      os << "  samg gamma = " << fmt9(spec.gamma) << "\n";
    }
  }
  return os.str();
}

std::vector<std::string> write_outputs(const SimulationConfig& config,
                                       const MetricsSeries& series,
                                       const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory " + out_dir + ": " + ec.message());

  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    const std::string path = (fs::path(out_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
    written.push_back(path);
  };
  emit("metrics.csv", metrics_csv(series));
  emit("summary.txt", summary_text(config, series));
  emit("regret.svg", regret_svg(series));
  return written;
}

}  // namespace freeride
