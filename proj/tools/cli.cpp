#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sicprob/definetti.hpp"
#include "sicprob/json_io.hpp"
#include "sicprob/ks.hpp"
#include "sicprob/probrep.hpp"
#include "sicprob/protocols.hpp"
#include "sicprob/search.hpp"
#include "sicprob/sic.hpp"

namespace sicprob::cli {

namespace {

using Json = nlohmann::json;
namespace jio = sicprob::json;
namespace fs = std::filesystem;

constexpr double kTraceRuleTol = 1e-10;

struct Output {
  std::string path;
  bool pretty = false;

  void attach(CLI::App* cmd, bool with_out = true) {
    cmd->add_flag("--pretty", pretty, "Indent the JSON output");
    if (with_out) cmd->add_option("--out", path, "Write the JSON report to this file instead of stdout");
  }

  void emit(const Json& j, std::ostream& out) const {
    const int indent = pretty ? 2 : -1;
    if (path.empty()) {
      out << j.dump(indent) << '\n';
    } else {
      jio::write_file(path, j, indent);
    }
  }
};

// A SIC is named either by a fiducial file or a built-in dimension.
struct SicSource {
  std::string fiducial_path;
  int builtin = 0;

  void attach(CLI::App* cmd, const char* file_flag = "--sic") {
    auto* f = cmd->add_option(file_flag, fiducial_path, "Fiducial JSON record generating the SIC");
    auto* b = cmd->add_option("--builtin", builtin, "Use the built-in SIC of this dimension (2, 3 or 8)");
    f->excludes(b);
  }

  bool given() const { return !fiducial_path.empty() || builtin != 0; }

  Sic load() const {
    if (!fiducial_path.empty()) {
      const auto fids = jio::decode_fiducials(jio::read_file(fiducial_path));
      if (fids.size() != 1) throw Error(ErrorKind::Format, "expected exactly one fiducial record");
      return orbit(fids.front());
    }
    if (builtin == 2) return tetrahedron_sic();
    if (builtin != 0) return orbit(builtin_fiducial(builtin));
    throw Error(ErrorKind::InvalidArgument, "a SIC is required (--sic FILE or --builtin D)");
  }
};

std::vector<ComplexMatrix> decode_matrices(const Json& j) {
  const Json& arr = j.is_object() && j.contains("elements") ? j.at("elements") : j;
  if (!arr.is_array()) throw Error(ErrorKind::Format, "expected a JSON array of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : arr) out.push_back(jio::decode_matrix(m));
  return out;
}

Json encode_report(const Fiducial& f, const VerificationReport& r) {
  Json j = jio::encode(r);
  j["label"] = f.label;
  j["group"] = jio::encode(f.group);
  j["residual"] = FramePotential(f.group).residual(f.vector);
  return j;
}

// ---------------------------------------------------------------- verify

struct VerifyCmd {
  int builtin = 0;
  std::string fiducial;
  double tol = 1e-12;
  Output output;

  void attach(CLI::App* cmd) {
    auto* b = cmd->add_option("--builtin", builtin, "Verify the built-in fiducial of this dimension (2, 3 or 8)");
    auto* f = cmd->add_option("--fiducial", fiducial, "Fiducial record or catalog array (JSON)");
    b->excludes(f);
    cmd->add_option("--tol", tol, "Verification tolerance")->capture_default_str();
    output.attach(cmd);
  }

  int run(std::ostream& out) const {
    std::vector<Fiducial> fids;
    if (builtin != 0) {
      fids.push_back(builtin_fiducial(builtin));
    } else {
      const std::string path = fiducial.empty() ? std::string(SICPROB_DATA_DIR) + "/fiducials.json" : fiducial;
      fids = jio::decode_fiducials(jio::read_file(path));
    }
    Json results = Json::array();
    bool all_pass = true;
    for (const auto& f : fids) {
      const VerificationReport r = verify_sic(orbit(f), tol);
      all_pass = all_pass && r.pass;
      results.push_back(encode_report(f, r));
    }
    output.emit(results.size() == 1 ? results.front() : Json{{"results", results}, {"pass", all_pass}}, out);
    return all_pass ? kExitOk : kExitFailed;
  }
};

// ---------------------------------------------------------------- search

struct SearchCmd {
  SearchConfig config;
  std::string out_path;
  std::string tensor_power;
  bool pretty = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--dim", config.dim, "Hilbert-space dimension")->required();
    cmd->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    cmd->add_option("--restarts", config.restarts, "Number of random restarts")->capture_default_str();
    cmd->add_option("--tol", config.tolerance, "Frame-potential residual target")->capture_default_str();
    cmd->add_option("--polish-tol", config.polish_tolerance, "Residual target for the polish stage")
        ->capture_default_str();
    cmd->add_option("--max-iter", config.max_iterations, "Descent iterations per restart")->capture_default_str();
    cmd->add_option("--jobs", config.jobs, "Parallel restarts")->capture_default_str();
    cmd->add_option("--tensor-power", tensor_power, "Use the tensor-power group BASE,K (e.g. 2,3 for d=8)");
    cmd->add_option("--out", out_path, "Write the fiducial record here (report goes to <stem>.report.json)");
    cmd->add_flag("--pretty", pretty, "Indent the JSON output");
  }

  int run(std::ostream& out) {
    if (!tensor_power.empty()) {
      const auto comma = tensor_power.find(',');
      if (comma == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--tensor-power expects BASE,K");
      config.group = GroupSpec::tensor_power(std::stoi(tensor_power.substr(0, comma)),
                                             std::stoi(tensor_power.substr(comma + 1)));
    }
    SearchResult result;
    bool reached = true;
    try {
      result = search_fiducial(config);
    } catch (const SearchExhausted& e) {
      result = e.result();
      reached = false;
    }
    if (reached && result.residual > config.polish_tolerance) {
      result.fiducial = polish(result.fiducial, config.polish_tolerance);
      const FramePotential fp(result.fiducial.group);
      result.residual = fp.residual(result.fiducial.vector);
      result.potential_value = fp.value(result.fiducial.vector);
    }

    const Json report{{"residual", result.residual},
                      {"iterations", result.iterations_used},
                      {"potential", result.potential_value},
                      {"restart_index", result.restart_index},
                      {"reached_tolerance", reached}};
    const int indent = pretty ? 2 : -1;
    if (!out_path.empty()) {
      jio::write_file(out_path, jio::encode(result.fiducial), indent);
      fs::path sidecar(out_path);
      sidecar.replace_extension(".report.json");
      jio::write_file(sidecar, report, indent);
    }
    Json stdout_payload = report;
    stdout_payload["fiducial"] = jio::encode(result.fiducial);
    out << stdout_payload.dump(indent) << '\n';
    return reached ? kExitOk : kExitFailed;
  }
};

// ---------------------------------------------------------------- convert

struct ConvertCmd {
  std::string state;
  std::string probs;
  SicSource sic;
  double tol = kStateTol;
  Output output;

  void attach(CLI::App* cmd) {
    auto* s = cmd->add_option("--state", state, "Density matrix JSON: emit its SIC probabilities");
    auto* p = cmd->add_option("--probs", probs, "Probability vector JSON: emit the reconstructed operator");
    s->excludes(p);
    sic.attach(cmd);
    cmd->add_option("--tol", tol, "Positivity tolerance for the qplex check")->capture_default_str();
    output.attach(cmd);
  }

  int run(std::ostream& out) const {
    const Sic s = sic.load();
    if (!state.empty()) {
      const ProbVector p = state_to_probs(jio::decode_matrix(jio::read_file(state)), s);
      output.emit(jio::encode(p), out);
      return kExitOk;
    }
    if (probs.empty()) throw Error(ErrorKind::InvalidArgument, "convert needs --state or --probs");
    const ProbVector p = jio::decode_prob_vector(jio::read_file(probs));
    const ComplexMatrix rho = probs_to_state(p, s);
    const QPlexReport q = qplex_membership(p, s, tol);
    output.emit({{"state", jio::encode(rho)},
                 {"qplex", {{"member", q.member},
                            {"min_eigenvalue", q.min_eigenvalue},
                            {"reconstructed_trace", q.reconstructed_trace},
                            {"tolerance", q.tolerance}}}},
                out);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- born

struct BornCmd {
  std::string state;
  std::string probs;
  std::string ground;
  std::string conditional;
  SicSource sic;
  bool check_trace = false;
  Output output;

  void attach(CLI::App* cmd) {
    auto* s = cmd->add_option("--state", state, "Density matrix JSON (converted to SIC probabilities)");
    auto* p = cmd->add_option("--probs", probs, "SIC probability vector JSON");
    s->excludes(p);
    auto* g = cmd->add_option("--ground", ground, "Ground POVM: JSON array of matrices");
    auto* c = cmd->add_option("--conditional", conditional, "Conditional matrix JSON P(D_j|H_i)");
    g->excludes(c);
    sic.attach(cmd);
    cmd->add_flag("--check-trace", check_trace, "Compare against tr(rho D_j); exit 1 on mismatch beyond 1e-10");
    output.attach(cmd);
  }

  int run(std::ostream& out) const {
    const Sic s = sic.load();
    std::optional<ComplexMatrix> rho;
    ProbVector p;
    if (!state.empty()) {
      rho = jio::decode_matrix(jio::read_file(state));
      p = state_to_probs(*rho, s);
    } else if (!probs.empty()) {
      p = jio::decode_prob_vector(jio::read_file(probs));
    } else {
      throw Error(ErrorKind::InvalidArgument, "born needs --state or --probs");
    }

    std::vector<ComplexMatrix> povm;
    ConditionalMatrix c;
    if (!ground.empty()) {
      povm = decode_matrices(jio::read_file(ground));
      c = conditional_matrix(povm, s);
    } else if (!conditional.empty()) {
      c = jio::decode_conditional(jio::read_file(conditional));
      validate(c);
    } else {
      throw Error(ErrorKind::InvalidArgument, "born needs --ground or --conditional");
    }

    const GroundPrediction q = born_urgleichung(p, c, s.dim);
    Json report{{"sky", jio::encode(p)},
                {"conditional", jio::encode(c)},
                {"ltp", jio::encode(ltp(p, c))},
                {"q", jio::encode(q.q)},
                {"out_of_range", q.out_of_range}};
    if (!check_trace) {
      output.emit(report, out);
      return kExitOk;
    }
    if (!rho || povm.empty()) throw Error(ErrorKind::InvalidArgument, "--check-trace needs --state and --ground");
    std::vector<double> trace_rule;
    double max_dev = 0;
    for (std::size_t j = 0; j < povm.size(); ++j) {
      trace_rule.push_back(std::real((*rho * povm[j]).trace()));
      max_dev = std::max(max_dev, std::abs(trace_rule.back() - q.q.values[j]));
    }
    const bool pass = max_dev <= kTraceRuleTol;
    report["trace_rule"] = trace_rule;
    report["max_deviation"] = max_dev;
    report["pass"] = pass;
    output.emit(report, out);
    return pass ? kExitOk : kExitFailed;
  }
};

// ---------------------------------------------------------------- ks

struct KsCmd {
  std::string set;
  std::string rays;
  std::string expect;
  std::uint64_t budget = ks::kDefaultNodeBudget;
  Output output;

  void attach(CLI::App* cmd) {
    auto* s = cmd->add_option("--set", set, "Built-in construction")
                  ->check(CLI::IsMember({"peres", "peres-table", "cega"}));
    auto* r = cmd->add_option("--rays", rays, "Custom rays: JSON list of [[a,b],[a,b],[a,b]] (a + b sqrt2)");
    s->excludes(r);
    cmd->add_option("--expect", expect, "Exit 1 unless the verdict matches")
        ->check(CLI::IsMember({"noncolorable", "colorable", "contradiction"}));
    cmd->add_option("--budget", budget, "Search node budget")->capture_default_str();
    output.attach(cmd);
  }

  static ks::RaySet load_rays(const std::string& path) {
    const auto j = jio::read_file(path);
    if (!j.is_array()) throw Error(ErrorKind::Format, "rays: expected a JSON array");
    std::vector<ks::Ray> out;
    for (const auto& r : j) {
      if (!r.is_array() || r.size() != 3) throw Error(ErrorKind::Format, "rays: each ray needs three components");
      std::array<ks::QuadInt, 3> c;
      for (std::size_t k = 0; k < 3; ++k) {
        if (!r[k].is_array() || r[k].size() != 2) throw Error(ErrorKind::Format, "rays: component must be [a, b]");
        c[k] = {r[k][0].get<std::int64_t>(), r[k][1].get<std::int64_t>()};
      }
      out.emplace_back(c[0], c[1], c[2]);
    }
    return ks::make_ray_set(out);
  }

  int run(std::ostream& out) const {
    if (set == "cega") {
      const auto v = ks::cega_parity_check(ks::cega_table());
      output.emit({{"construction", "cega"},
                   {"letters", v.letters},
                   {"total_true_required", v.total_true_required},
                   {"multiplicity_even", v.multiplicity_even},
                   {"contradiction", v.contradiction},
                   {"proof", v.proof}},
                  out);
      if (!expect.empty() && expect != "contradiction") throw Error(ErrorKind::InvalidArgument, "cega verdicts are contradictions");
      return expect.empty() || v.contradiction ? kExitOk : kExitFailed;
    }
    ks::RaySet rs;
    std::string name;
    if (set == "peres") {
      rs = ks::peres_rays();
      name = "peres";
    } else if (set == "peres-table") {
      rs = ks::printed_peres_table();
      name = "peres-table";
    } else if (!rays.empty()) {
      rs = load_rays(rays);
      name = "custom";
    } else {
      throw Error(ErrorKind::InvalidArgument, "ks needs --set or --rays");
    }
    const auto g = ks::orthogonality_graph(rs);
    const auto res = ks::ks_colorable(rs, budget);
    Json j{{"construction", name},
           {"rays", g.vertices},
           {"edges", g.edges.size()},
           {"bases", g.bases.size()},
           {"colorable", res.colorable},
           {"nodes_explored", res.nodes_explored}};
    if (res.assignment) {
      Json truths = Json::array();
      for (std::size_t i = 0; i < res.assignment->size(); ++i) {
        if ((*res.assignment)[i]) truths.push_back(ks::label(rs.rays[i]));
      }
      j["true_rays"] = truths;
    }
    output.emit(j, out);
    if (expect == "contradiction") throw Error(ErrorKind::InvalidArgument, "--expect contradiction applies to cega");
    if (expect == "noncolorable" && res.colorable) return kExitFailed;
    if (expect == "colorable" && !res.colorable) return kExitFailed;
    return kExitOk;
  }
};

// ---------------------------------------------------------------- tomo

struct TomoCmd {
  std::string truth;
  std::string candidates;
  int n = 0;
  std::uint64_t seed = 0;
  int thin = 1;
  SicSource sic;
  Output output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--true", truth, "True density matrix JSON")->required();
    cmd->add_option("--candidates", candidates, "Prior JSON {\"candidates\": [...], \"weights\": [...]}")
        ->required();
    cmd->add_option("--n", n, "Number of simulated SIC outcomes")->required();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("--thin", thin, "Keep every k-th posterior in the history")->capture_default_str();
    sic.attach(cmd);
    output.attach(cmd);
  }

  int run(std::ostream& out) const {
    if (thin < 1) throw Error(ErrorKind::InvalidArgument, "--thin must be >= 1");
    const ComplexMatrix rho = jio::decode_matrix(jio::read_file(truth));
    const auto pj = jio::read_file(candidates);
    if (!pj.is_object() || !pj.contains("candidates") || !pj.contains("weights")) {
      throw Error(ErrorKind::Format, "prior: expected {\"candidates\": [...], \"weights\": [...]}");
    }
    const Prior prior = make_prior(decode_matrices(pj.at("candidates")), pj.at("weights").get<std::vector<double>>());
    SicSource source = sic;
    if (!source.given()) source.builtin = static_cast<int>(rho.rows());
    const Sic s = source.load();

    const TomographyTrace t = posterior_concentration(prior, rho, s, n, seed);
    Json history = Json::array();
    for (std::size_t step = 0; step < t.posterior_history.size(); ++step) {
      if (step % static_cast<std::size_t>(thin) == 0 || step + 1 == t.posterior_history.size()) {
        history.push_back({{"step", step}, {"weights", t.posterior_history[step]}});
      }
    }
    output.emit({{"seed", t.seed},
                 {"n", n},
                 {"outcomes", t.outcomes},
                 {"history", history},
                 {"closest_candidate", t.closest_candidate},
                 {"final_weight_on_closest", t.final_weight_on_closest}},
                out);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- demo

struct TeleportCmd {
  std::string p = "1/2";
  Output output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--p", p, "Charlie's probability of heads, as an exact fraction")->capture_default_str();
    output.attach(cmd);
  }

  int run(std::ostream& out) const {
    const auto r = coin_teleport(Rational::parse(p));
    Json rows = Json::array();
    for (const auto& c : r.enumeration) {
      rows.push_back({{"alice_bob", std::string(2, c.shared)},
                      {"charlie", std::string(1, c.charlie)},
                      {"probability", c.probability.str()},
                      {"glow", c.glow == Glow::Green ? "green" : "red"},
                      {"bob_final", std::string(1, c.bob_final)}});
    }
    const bool equal = r.bob_heads_prob == r.input_p;
    output.emit({{"input_p", r.input_p.str()},
                 {"bob_heads_prob", r.bob_heads_prob.str()},
                 {"charlie_original_posterior", r.charlie_original_posterior.str()},
                 {"bob_matches_input", equal},
                 {"enumeration", rows}},
                out);
    return equal ? kExitOk : kExitFailed;
  }
};

struct DutchBookCmd {
  TicketPrices prices;
  Output output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--pe", prices.p_e, "Price of the ticket on E")->required();
    cmd->add_option("--pf", prices.p_f, "Price of the ticket on F")->required();
    cmd->add_option("--pef", prices.p_e_or_f, "Price of the ticket on E or F")->required();
    output.attach(cmd);
  }

  int run(std::ostream& out) const {
    const auto v = dutch_book_check(prices);
    Json tx = Json::array();
    for (const auto& t : v.transactions) {
      tx.push_back({{"ticket", to_string(t.ticket)}, {"action", to_string(t.action)}, {"price", t.price}});
    }
    Json j{{"coherent", v.coherent}, {"transactions", tx}};
    if (!v.coherent) j["alice_loss"] = {{"E", v.loss[0]}, {"F", v.loss[1]}, {"neither", v.loss[2]}};
    output.emit(j, out);
    return kExitOk;
  }
};

// ---------------------------------------------------------------- tower

struct TowerCmd {
  std::vector<std::int64_t> dims;
  Output output;

  void attach(CLI::App* cmd) {
    cmd->add_option("--dims", dims, "Comma-separated dimensions (each >= 4)")->required()->delimiter(',');
    output.attach(cmd);
  }

  int run(std::ostream& out) const {
    Json classes = Json::array();
    std::map<std::int64_t, std::vector<std::int64_t>> groups;
    for (auto d : dims) {
      const auto c = dimension_tower_class(d);
      classes.push_back({{"d", d}, {"class", c}});
      groups[c].push_back(d);
    }
    Json g = Json::object();
    for (const auto& [c, ds] : groups) g[std::to_string(c)] = ds;
    output.emit({{"classes", classes}, {"towers", g}}, out);
    return kExitOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SIC measurements, probability-only quantum rules and Kochen-Specker checks", "sicprob"};
  app.require_subcommand(1);

  VerifyCmd verify;
  SearchCmd search;
  ConvertCmd convert;
  BornCmd born;
  KsCmd ks_cmd;
  TomoCmd tomo;
  TeleportCmd teleport;
  DutchBookCmd dutch;
  TowerCmd tower;

  verify.attach(app.add_subcommand("verify", "Verify the SIC generated by a fiducial"));
  search.attach(app.add_subcommand("search", "Numerically search for a SIC fiducial"));
  convert.attach(app.add_subcommand("convert", "Convert between density matrices and SIC probabilities"));
  born.attach(app.add_subcommand("born", "Evaluate the Born rule as a modified law of total probability"));
  ks_cmd.attach(app.add_subcommand("ks", "Kochen-Specker noncolorability and parity checks"));
  tomo.attach(app.add_subcommand("tomo", "Simulated Bayesian SIC tomography"));
  auto* demo = app.add_subcommand("demo", "Small exact demonstrations");
  demo->require_subcommand(1);
  teleport.attach(demo->add_subcommand("teleport", "Classical coin-box teleportation"));
  dutch.attach(demo->add_subcommand("dutch-book", "Dutch-book coherence check for mutually exclusive E, F"));
  tower.attach(app.add_subcommand("tower", "Group dimensions by their real quadratic field"));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("verify")) return verify.run(out);
    if (app.got_subcommand("search")) return search.run(out);
    if (app.got_subcommand("convert")) return convert.run(out);
    if (app.got_subcommand("born")) return born.run(out);
    if (app.got_subcommand("ks")) return ks_cmd.run(out);
    if (app.got_subcommand("tomo")) return tomo.run(out);
    if (app.got_subcommand("tower")) return tower.run(out);
    if (demo->got_subcommand("teleport")) return teleport.run(out);
    if (demo->got_subcommand("dutch-book")) return dutch.run(out);
  } catch (const std::exception& e) {
    std::string line = e.what();
    std::replace(line.begin(), line.end(), '\n', ' ');
    err << "error: " << line << '\n';
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace sicprob::cli
