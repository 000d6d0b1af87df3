// Command-line front end for the Bricard palm analysis library.
//
// Exit codes: 0 success, 1 semantic negative (graphs not isomorphic),
// 2 usage or domain error, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bricard/errors.hpp"
#include "bricard/graph_json.hpp"
#include "bricard/palm.hpp"
#include "bricard/performance.hpp"
#include "bricard/svg.hpp"
#include "bricard/topo.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct RunConfig {
  double link_length_mm = 120.0;
  double twist_rad = bricard::symmetric_twist;
  int samples = 500;
  double input_stiffness = 1.0;
  double epsilon_frac = 1e-3;
  std::string output_path = "bricard_sweep.csv";
};

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bricard::Error("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw bricard::Error("malformed config file " + path + ": " + e.what());
  }
  RunConfig cfg;
  cfg.link_length_mm = j.value("link_length_mm", cfg.link_length_mm);
  cfg.twist_rad = j.value("twist_rad", cfg.twist_rad);
  cfg.samples = j.value("samples", cfg.samples);
  cfg.input_stiffness = j.value("input_stiffness", cfg.input_stiffness);
  cfg.epsilon_frac = j.value("epsilon_frac", cfg.epsilon_frac);
  cfg.output_path = j.value("output_path", cfg.output_path);
  return cfg;
}

void validate_run_config(const RunConfig& cfg) {
  if (!(cfg.link_length_mm > 0)) throw bricard::OutOfRange("link_length_mm must be positive");
  if (!(cfg.twist_rad > 0)) throw bricard::OutOfRange("twist_rad must be positive");
  if (cfg.samples < 2) throw bricard::OutOfRange("samples must be at least 2");
  if (!(cfg.input_stiffness > 0)) throw bricard::OutOfRange("input_stiffness must be positive");
  if (!(cfg.epsilon_frac > 0)) throw bricard::OutOfRange("epsilon_frac must be positive");
  if (cfg.output_path.empty()) throw bricard::OutOfRange("output_path must be non-empty");
}

void print_pose(const bricard::PalmConfiguration& pose, const bricard::JointAngles& angles) {
  std::cout << "l1 = " << fmt6(pose.l1) << "\nl2 = " << fmt6(pose.l2)
            << "\nl3 = " << fmt6(pose.l3) << "\nbeta = " << fmt6(angles.beta)
            << "\ngamma = " << fmt6(angles.gamma) << '\n';
}

int run_fk(double l1, double link_length) {
  const bricard::PalmParams params{link_length};
  try {
    const bricard::PalmConfiguration pose = bricard::pose_from_l1(l1, params);
    print_pose(pose, bricard::angles_from_pose(pose, params));
    return exit_ok;
  } catch (const bricard::Error& e) {
    std::cerr << "fk: " << e.what() << "\nvalid interval: l1 in (0, " << fmt6(params.l1_upper())
              << ") mm\n";
    return exit_usage;
  }
}

int run_ik(double l3, double link_length) {
  const bricard::PalmParams params{link_length};
  try {
    const double l1 = bricard::ik_l1_from_l3(l3, params);
    const bricard::PalmConfiguration pose = bricard::pose_from_l1(l1, params);
    print_pose(pose, bricard::angles_from_pose(pose, params));
    return exit_ok;
  } catch (const bricard::Error& e) {
    std::cerr << "ik: " << e.what() << "\nvalid interval: l3 in (0, " << fmt6(link_length)
              << ") mm\n";
    return exit_usage;
  }
}

std::string plot_path(const std::string& csv_path, const std::string& suffix) {
  const size_t dot = csv_path.rfind('.');
  const std::string stem = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
  return stem + suffix + ".svg";
}

int write_plots(const std::vector<bricard::PerformanceRow>& rows, const std::string& csv_path) {
  using bricard::svg::Panel;
  using bricard::svg::Series;

  Series beta_gamma{"gamma(beta)", {}};
  Series l1g{"L1", {}}, l2g{"L2", {}}, l3g{"L3", {}};
  Series jac{"dL3/dL1", {}}, stiff{"K_out", {}};
  Series zeta{"zeta", {}}, sigma{"sigma", {}}, kappa{"kappa", {}};
  for (const auto& r : rows) {
    beta_gamma.points.push_back({r.beta, r.gamma});
    l1g.points.push_back({r.gamma, r.l1});
    l2g.points.push_back({r.gamma, r.l2});
    l3g.points.push_back({r.gamma, r.l3});
    jac.points.push_back({r.l1, r.jacobian});
    stiff.points.push_back({r.l1, r.stiffness_out});
    zeta.points.push_back({r.l1, r.zeta});
    sigma.points.push_back({r.l1, r.sigma});
    kappa.points.push_back({r.l1, r.kappa});
  }

  const std::vector<std::pair<std::string, std::vector<Panel>>> charts = {
      {plot_path(csv_path, "_beta_gamma"),
       {{"passive angle vs input angle", "beta [rad]", "gamma [rad]", {beta_gamma}}}},
      {plot_path(csv_path, "_lengths"),
       {{"palm lengths vs passive angle", "gamma [rad]", "mm", {l1g, l2g, l3g}}}},
      {plot_path(csv_path, "_jacobian_stiffness"),
       {{"jacobian vs input radius", "L1 [mm]", "dL3/dL1", {jac}},
        {"output stiffness vs input radius", "L1 [mm]", "N/mm", {stiff}}}},
      {plot_path(csv_path, "_transmission"),
       {{"transmission indices vs input radius", "L1 [mm]", "index", {zeta, sigma, kappa}}}},
  };

  for (const auto& [path, panels] : charts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "sweep: cannot write " << path << '\n';
      return exit_io;
    }
    bricard::svg::write_chart(out, panels);
    if (!out) {
      std::cerr << "sweep: write failed for " << path << '\n';
      return exit_io;
    }
    std::cout << "wrote plot " << path << '\n';
  }
  return exit_ok;
}

int run_sweep(const RunConfig& cfg, bool plot) {
  validate_run_config(cfg);
  const bricard::PalmParams params{cfg.link_length_mm, cfg.twist_rad};
  const std::vector<bricard::PerformanceRow> rows =
      bricard::workspace_sweep(params, cfg.samples, cfg.input_stiffness, cfg.epsilon_frac);

  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out) {
    std::cerr << "sweep: cannot write " << cfg.output_path << '\n';
    return exit_io;
  }
  bricard::write_csv(rows, out);
  out.flush();
  if (!out) {
    std::cerr << "sweep: write failed for " << cfg.output_path << '\n';
    return exit_io;
  }
  std::cout << "wrote " << rows.size() << " rows to " << cfg.output_path << '\n';

  if (plot) return write_plots(rows, cfg.output_path);
  return exit_ok;
}

int run_topo_enumerate(int v_max, int max_per_kind, bool as_json) {
  const auto compositions = bricard::topo::enumerate_compositions(v_max, max_per_kind);
  const auto report = bricard::topo::validate_catalog();

  if (as_json) {
    nlohmann::json j;
    j["compositions"] = nlohmann::json::array();
    for (const auto& c : compositions)
      j["compositions"].push_back({{"v_loops", c.v_loops},
                                   {"n3", c.n3},
                                   {"n4", c.n4},
                                   {"n5", c.n5},
                                   {"n2_base", c.n2_base},
                                   {"n2", c.n2_label()}});
    j["catalog_report"] = nlohmann::json::array();
    for (const auto& c : report)
      j["catalog_report"].push_back({{"no", c.row.no},
                                     {"printed_v", c.row.printed_v},
                                     {"printed_n2_base", c.row.printed_n2_base},
                                     {"n3", c.row.n3},
                                     {"n4", c.row.n4},
                                     {"n5", c.row.n5},
                                     {"parity_ok", c.parity_ok},
                                     {"recomputed_v", c.recomputed_v},
                                     {"recomputed_n2_base", c.recomputed_n2_base},
                                     {"v_consistent", c.v_consistent},
                                     {"n2_consistent", c.n2_consistent}});
    std::cout << j.dump(2) << '\n';
    return exit_ok;
  }

  std::cout << "v_loops,n3,n4,n5,n2_base,n2\n";
  for (const auto& c : compositions)
    std::cout << c.v_loops << ',' << c.n3 << ',' << c.n4 << ',' << c.n5 << ',' << c.n2_base
              << ',' << c.n2_label() << '\n';
  std::cout << "\ncatalog_no,printed_v,printed_n2_base,n3,n4,n5,parity_ok,recomputed_v,"
               "recomputed_n2_base,v_consistent,n2_consistent\n";
  for (const auto& c : report)
    std::cout << c.row.no << ',' << c.row.printed_v << ',' << c.row.printed_n2_base << ','
              << c.row.n3 << ',' << c.row.n4 << ',' << c.row.n5 << ',' << c.parity_ok << ','
              << c.recomputed_v << ',' << c.recomputed_n2_base << ',' << c.v_consistent << ','
              << c.n2_consistent << '\n';
  return exit_ok;
}

int run_topo_iso(const std::string& file_a, const std::string& file_b) {
  const bricard::topo::TopologyGraph a = bricard::topo::load_graph(file_a);
  const bricard::topo::TopologyGraph b = bricard::topo::load_graph(file_b);
  if (bricard::topo::are_isomorphic(a, b)) {
    std::cout << "isomorphic\n";
    return exit_ok;
  }
  std::cout << "not isomorphic\n";
  return exit_negative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis toolkit for the triple-symmetric Bricard reconfigurable palm"};
  app.require_subcommand(1);

  // topo
  auto* topo = app.add_subcommand("topo", "Type-synthesis utilities");
  topo->require_subcommand(1);
  int v_max = 3, max_per_kind = 8;
  bool topo_json = false;
  auto* topo_enum =
      topo->add_subcommand("enumerate", "Enumerate basic-link compositions and check the catalog");
  topo_enum->add_option("--v-max", v_max, "Largest loop count to enumerate");
  topo_enum->add_option("--max-per-kind", max_per_kind, "Cap on each basic-link count");
  topo_enum->add_flag("--json", topo_json, "Emit JSON instead of CSV");
  std::string iso_a, iso_b;
  auto* topo_iso = topo->add_subcommand("iso", "Test two graph files for isomorphism");
  topo_iso->add_option("file_a", iso_a, "First graph (JSON)")->required();
  topo_iso->add_option("file_b", iso_b, "Second graph (JSON)")->required();

  // fk / ik
  double fk_l1 = 0, ik_l3 = 0, link_length = 120.0;
  auto* fk = app.add_subcommand("fk", "Forward kinematics from the input radius L1");
  fk->add_option("--l1", fk_l1, "Input radius [mm]")->required();
  fk->add_option("--L", link_length, "Link length [mm]");
  auto* ik = app.add_subcommand("ik", "Inverse kinematics from the palm height L3");
  ik->add_option("--l3", ik_l3, "Palm height [mm]")->required();
  ik->add_option("--L", link_length, "Link length [mm]");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Workspace sweep: CSV table and optional SVG plots");
  std::string config_path;
  RunConfig flags;
  bool plot = false;
  sweep->add_option("--config", config_path, "RunConfig JSON file");
  auto* opt_L = sweep->add_option("--L", flags.link_length_mm, "Link length [mm]");
  auto* opt_twist = sweep->add_option("--twist", flags.twist_rad, "Joint twist [rad]");
  auto* opt_samples = sweep->add_option("--samples", flags.samples, "Number of sweep rows");
  auto* opt_stiff =
      sweep->add_option("--stiffness", flags.input_stiffness, "Input stiffness K_L1 [N/mm]");
  auto* opt_eps =
      sweep->add_option("--epsilon", flags.epsilon_frac, "Boundary margin as a fraction of L");
  auto* opt_out = sweep->add_option("--output", flags.output_path, "CSV output path");
  sweep->add_flag("--plot", plot, "Also write the four SVG plots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (topo_enum->parsed()) return run_topo_enumerate(v_max, max_per_kind, topo_json);
    if (topo_iso->parsed()) return run_topo_iso(iso_a, iso_b);
    if (fk->parsed()) return run_fk(fk_l1, link_length);
    if (ik->parsed()) return run_ik(ik_l3, link_length);
    if (sweep->parsed()) {
      RunConfig cfg = config_path.empty() ? RunConfig{} : load_run_config(config_path);
      if (opt_L->count()) cfg.link_length_mm = flags.link_length_mm;
      if (opt_twist->count()) cfg.twist_rad = flags.twist_rad;
      if (opt_samples->count()) cfg.samples = flags.samples;
      if (opt_stiff->count()) cfg.input_stiffness = flags.input_stiffness;
      if (opt_eps->count()) cfg.epsilon_frac = flags.epsilon_frac;
      if (opt_out->count()) cfg.output_path = flags.output_path;
      return run_sweep(cfg, plot);
    }
  } catch (const bricard::Error& e) {
    std::cerr << app.get_name() << ": " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << app.get_name() << ": " << e.what() << '\n';
    return exit_usage;
  }
  return exit_usage;
}
