// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sicprob/definetti.hpp"
#include "sicprob/ks.hpp"
#include "sicprob/probrep.hpp"
#include "sicprob/protocols.hpp"
#include "sicprob/search.hpp"
#include "sicprob/sic.hpp"
#include "support/random.hpp"

using namespace sicprob;
using sicprob::testing::random_povm;
using sicprob::testing::random_state;
using sicprob::testing::random_unit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome builtin_sics() {
  const auto t0 = Clock::now();
  std::ostringstream detail;
  bool pass = true;
  const std::vector<std::pair<const char*, Sic>> cases{
      {"tetrahedron", tetrahedron_sic()},
      {"hesse", orbit(builtin_fiducial(3))},
      {"hoggar", orbit(builtin_fiducial(8))},
  };
  for (const auto& [name, sic] : cases) {
    const auto r = verify_sic(sic, 1e-12);
    pass = pass && r.pass && sic.vectors.size() == static_cast<std::size_t>(sic.dim * sic.dim);
    detail << name << " overlap " << fmt("%.1e", r.max_overlap_deviation) << " identity "
           << fmt("%.1e", r.max_resolution_deviation) << "; ";
  }
  const double t = seconds_since(t0);
  detail << fmt("%.3f s", t);
  return {pass && t < 1.0, detail.str()};
}

Outcome tetrahedron_trace_overlaps() {
  const auto tet = qubit_tetrahedron();
  double worst = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) worst = std::max(worst, std::abs((tet[i] * tet[j]).trace().real() - 1.0 / 3.0));
  return {worst <= 1e-14, "max deviation " + fmt("%.1e", worst)};
}

Outcome urgleichung_matches_trace_rule() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  double worst = 0;
  for (int d = 2; d <= 6; ++d) {
    const Sic sic = d == 2 ? tetrahedron_sic() : orbit(search_fiducial({.dim = d, .seed = 1}).fiducial);
    std::uniform_int_distribution<int> elements(1, 2 * d);
    for (int trial = 0; trial < 1000; ++trial) {
      const ComplexMatrix rho = random_state(d, rng);
      const auto povm = random_povm(d, elements(rng), rng);
      const auto q = born_urgleichung(state_to_probs(rho, sic), conditional_matrix(povm, sic), d);
      for (std::size_t j = 0; j < povm.size(); ++j)
        worst = std::max(worst, std::abs(q.q[j] - (rho * povm[j]).trace().real()));
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t < 30.0, "max deviation " + fmt("%.1e", worst) + ", " + fmt("%.2f s", t)};
}

Outcome probability_round_trip() {
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int d = 2; d <= 6; ++d) {
    const Sic sic = d == 2 ? tetrahedron_sic() : orbit(search_fiducial({.dim = d, .seed = 1}).fiducial);
    for (int trial = 0; trial < 1000; ++trial) {
      const ComplexMatrix rho = random_state(d, rng);
      worst = std::max(worst, max_abs_diff(probs_to_state(state_to_probs(rho, sic), sic), rho));
    }
  }
  return {worst <= 1e-12, "max entry deviation " + fmt("%.1e", worst)};
}

Outcome q_family_structure() {
  bool counts = true;
  for (int d = 2; d <= 10; ++d) counts = counts && family_outcome_count(2, d) == static_cast<std::size_t>(d * d);
  std::mt19937_64 rng(11);
  bool exact = true;
  // q = 0 requires exactly d sky outcomes.
  for (int d = 2; d <= 6; ++d) {
    for (int trial = 0; trial < 100; ++trial) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::uniform_int_distribution<int> ground_count(1, 6);
      const int m = ground_count(rng);
      std::vector<double> p(static_cast<std::size_t>(d));
      double s = 0;
      for (double& x : p) s += (x = u(rng));
      for (double& x : p) x /= s;
      ConditionalMatrix c;
      c.values = Eigen::MatrixXd::NullaryExpr(m, d, [&] { return u(rng); });
      for (Index i = 0; i < d; ++i) c.values.col(i) /= c.values.col(i).sum();
      const ProbVector pv = make_prob_vector(p);
      exact = exact && general_family(pv, c, 0, d).q.values == ltp(pv, c).values;
    }
  }
  return {counts && exact, std::string("counts ") + (counts ? "ok" : "bad") + ", q=0 vs ltp " +
                               (exact ? "bit-identical" : "differs")};
}

Outcome fiducial_search() {
  std::ostringstream detail;
  bool pass = true;
  for (int d = 2; d <= 7; ++d) {
    const auto t0 = Clock::now();
    SearchConfig cfg{.dim = d, .seed = 1, .restarts = 64};
    double residual = 1;
    bool verified = false;
    try {
      const SearchResult r = search_fiducial(cfg);
      const Fiducial f = polish(r.fiducial, cfg.polish_tolerance);
      residual = FramePotential(f.group).residual(f.vector);
      verified = verify_sic(orbit(f), 1e-7).pass;
    } catch (const Error& e) {
      detail << "d=" << d << " " << e.what() << "; ";
    }
    const double t = seconds_since(t0);
    const bool ok = residual <= 1e-9 && verified && t <= 120.0;
    pass = pass && ok;
    detail << "d=" << d << " " << fmt("%.1e", residual) << " " << fmt("%.2fs", t) << (ok ? "" : " FAIL") << "; ";
  }
  return {pass, detail.str()};
}

Outcome welch_bound_property() {
  std::mt19937_64 rng(3);
  double worst_margin = 1e300;
  for (int d = 2; d <= 6; ++d) {
    const FramePotential fp(GroupSpec::single(d));
    for (int trial = 0; trial < 1000; ++trial) {
      worst_margin = std::min(worst_margin, fp.value(random_unit(d, rng)) - welch_bound(d));
    }
  }
  return {worst_margin >= -1e-12, "min F - bound " + fmt("%.2e", worst_margin)};
}

Outcome kochen_specker() {
  const auto t0 = Clock::now();
  const auto res = ks::ks_colorable(ks::peres_rays());
  const double t = seconds_since(t0);
  const auto cega = ks::cega_parity_check(ks::cega_table());
  std::ostringstream detail;
  detail << "peres colorable=" << res.colorable << " nodes=" << res.nodes_explored << " " << fmt("%.3f s", t)
         << "; cega contradiction=" << cega.contradiction;
  return {!res.colorable && t < 1.0 && cega.contradiction, detail.str()};
}

Outcome de_finetti_tomography() {
  const Sic sic = tetrahedron_sic();
  const ComplexMatrix proj = qubit_tetrahedron()[0];
  const ComplexMatrix mixed = ComplexMatrix::Identity(2, 2) / 2.0;
  const Prior prior = make_prior({proj, mixed}, {0.5, 0.5});
  int concentrated = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto tr = posterior_concentration(prior, proj, sic, 10000, seed);
    if (tr.closest_candidate == 0 && tr.final_weight_on_closest >= 0.99) ++concentrated;
  }
  ComplexMatrix north = ComplexMatrix::Zero(2, 2);
  north(0, 0) = 1;
  const Prior worked = bayes_update(make_prior({north, mixed}, {0.5, 0.5}), sic, {0});
  const double dev = std::max(std::abs(worked.weights[0] - 0.61204), std::abs(worked.weights[1] - 0.38796));
  return {concentrated >= 19 && dev <= 1e-4,
          std::to_string(concentrated) + "/20 concentrated; worked posterior " + fmt("%.6f", worked.weights[0]) +
              " / " + fmt("%.6f", worked.weights[1])};
}

Outcome marginal_consistency() {
  std::mt19937_64 rng(5);
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w{u(rng), u(rng), u(rng)};
    const double s = w[0] + w[1] + w[2];
    for (double& x : w) x /= s;
    w[2] = 1.0 - w[0] - w[1];
    const Prior prior = make_prior({random_state(2, rng), random_state(2, rng), random_state(2, rng)}, w);
    const ComplexMatrix two = mixture_state(prior, 2);
    worst = std::max(worst, max_abs_diff(partial_trace(two, {2, 2}, 1), mixture_state(prior, 1)));
    worst = std::max(worst, max_abs_diff(partial_trace(two, {2, 2}, 0), mixture_state(prior, 1)));
  }
  return {worst <= 1e-12, "max deviation " + fmt("%.1e", worst)};
}

Outcome coin_teleportation() {
  bool pass = true;
  std::ostringstream detail;
  for (const char* text : {"0", "1/2", "3/10", "1"}) {
    const Rational p = Rational::parse(text);
    const auto r = coin_teleport(p);
    const bool ok = r.bob_heads_prob == p && r.charlie_original_posterior == Rational(1, 2);
    pass = pass && ok;
    detail << "p=" << p.str() << " bob=" << r.bob_heads_prob.str() << " charlie=" << r.charlie_original_posterior.str()
           << "; ";
  }
  return {pass, detail.str()};
}

Outcome dimension_tower() {
  bool pass = true;
  std::ostringstream detail;
  for (std::int64_t d : {4, 8, 19, 48}) {
    const auto c = dimension_tower_class(d);
    pass = pass && c == 5;
    detail << d << "->" << c << " ";
  }
  const auto c5 = dimension_tower_class(5);
  detail << "5->" << c5;
  return {pass && c5 == 3 && c5 != dimension_tower_class(4), detail.str()};
}

Outcome dutch_book() {
  const auto bad = dutch_book_check({0.3, 0.4, 0.8});
  const auto good = dutch_book_check({0.3, 0.4, 0.7});
  const bool sure_loss = !bad.coherent && !bad.transactions.empty() && bad.loss[0] > 0 && bad.loss[1] > 0 &&
                         bad.loss[2] > 0;
  std::ostringstream detail;
  detail << "incoherent profit (" << fmt("%.2f", bad.loss[0]) << ", " << fmt("%.2f", bad.loss[1]) << ", "
         << fmt("%.2f", bad.loss[2]) << "); (0.3, 0.4, 0.7) coherent=" << good.coherent;
  return {sure_loss && good.coherent, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"builtin SIC verification", builtin_sics},
      {"tetrahedron trace overlaps", tetrahedron_trace_overlaps},
      {"urgleichung equals trace rule", urgleichung_matches_trace_rule},
      {"probability round trip", probability_round_trip},
      {"q-family structure", q_family_structure},
      {"fiducial search d=2..7", fiducial_search},
      {"Welch bound", welch_bound_property},
      {"Kochen-Specker", kochen_specker},
      {"de Finetti tomography", de_finetti_tomography},
      {"marginal consistency", marginal_consistency},
      {"coin teleportation", coin_teleportation},
      {"dimension tower", dimension_tower},
      {"Dutch book", dutch_book},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s  %-32s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
