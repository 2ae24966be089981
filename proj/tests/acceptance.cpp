// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "chimera/adiabatic.hpp"
#include "chimera/dynamics.hpp"
#include "chimera/experiment.hpp"
#include "chimera/operators.hpp"
#include "chimera/spectral.hpp"

using namespace chimera;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Graphs and their Hamiltonians are shared between criteria; eigensolves are cached
// inside WalkHamiltonian.
struct Shared {
  std::map<std::string, std::unique_ptr<ChimeraGraph>> graphs;
  std::map<std::string, std::unique_ptr<WalkHamiltonian>> hams;
  std::unique_ptr<LabeledBasis> periodic16_basis;

  static std::string key(int M, int N, int L, Boundary b, bool plus) {
    return fmt::format("{}x{}x{}-{}{}", M, N, L, to_string(b), plus ? "+" : "");
  }
  const ChimeraGraph& graph(int M, int N, int L, Boundary b, bool plus = false) {
    auto& slot = graphs[key(M, N, L, b, plus)];
    if (!slot) {
      auto g = build_chimera(M, N, L, b);
      slot = std::make_unique<ChimeraGraph>(plus ? enhance(g) : g);
    }
    return *slot;
  }
  const WalkHamiltonian& ham(int M, int N, int L, Boundary b, bool plus = false) {
    auto& slot = hams[key(M, N, L, b, plus)];
    if (!slot) slot = std::make_unique<WalkHamiltonian>(hamiltonian(graph(M, N, L, b, plus)));
    return *slot;
  }
  const LabeledBasis& periodic16() {
    if (!periodic16_basis) {
      const auto& g = graph(16, 16, 4, Boundary::periodic);
      periodic16_basis = std::make_unique<LabeledBasis>(
          label_eigenstates(ham(16, 16, 4, Boundary::periodic).eigensystem(), symmetry_set(g), enumerate_labels(g)));
    }
    return *periodic16_basis;
  }
};

Shared shared;

double median(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const std::size_t m = x.size() / 2;
  return x.size() % 2 ? x[m] : 0.5 * (x[m - 1] + x[m]);
}

// 1. Every declared symmetry operator commutes with its Hamiltonian.
Outcome commutation() {
  struct Case {
    Boundary b;
    bool plus;
  };
  double worst = 0.0;
  int checked = 0;
  std::vector<std::tuple<int, int, int>> sizes{{2, 2, 2}, {4, 4, 4}, {16, 16, 4}};
  for (auto [M, N, L] : sizes) {
    for (Case c : {Case{Boundary::periodic, false}, Case{Boundary::reflecting, false}, Case{Boundary::reflecting, true}}) {
      // The intracell Pi operators exist for L = 4 only.
      const int l = c.plus ? 4 : L;
      const auto& g = shared.graph(M, N, l, c.b, c.plus);
      const auto& H = shared.ham(M, N, l, c.b, c.plus);
      for (const auto& op : symmetry_set(g)) {
        worst = std::max(worst, commutator_maxnorm(op.matrix, H.matrix()) / H.max_abs());
        ++checked;
      }
    }
  }
  return {worst <= kCommuteRelTol, fmt::format("{} operators, max ||[S,H]||/||H|| = {:.3g}", checked, worst)};
}

// 2. Closed-form spectra and family cardinalities.
Outcome spectrum_oracle() {
  bool ok = true;
  std::string detail;
  for (auto [b, plus, tag] : {std::tuple{Boundary::periodic, false, "periodic"},
                              {Boundary::reflecting, false, "reflecting"},
                              {Boundary::reflecting, true, "enhanced"}}) {
    const auto& g = shared.graph(4, 4, 4, b, plus);
    const auto& H = shared.ham(4, 4, 4, b, plus);
    const auto labels = enumerate_labels(g);
    const auto r = verify_spectrum(labels, H.eigensystem());
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& l : labels) ++counts[static_cast<int>(l.family)];
    const bool cards = counts[0] == 48 && counts[1] == 48 && counts[2] == 32;
    ok = ok && !r.count_mismatch && r.max_deviation <= 1e-9 && cards;
    detail += fmt::format("{}: dev {:.2g}, |>|,|<|,|x| = {},{},{}; ", tag, r.max_deviation, counts[0], counts[1],
                          counts[2]);
  }
  return {ok, detail};
}

std::vector<double> values_in(const EigenSystem& e, double lo, double hi) {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    if (e.values(i) >= lo && e.values(i) <= hi) out.push_back(e.values(i));
  }
  return out;
}

const WalkHamiltonian& broken16() {
  static const WalkHamiltonian H =
      hamiltonian(break_vertices(shared.graph(16, 16, 4, Boundary::reflecting), {{1, 1, 1}}));
  return H;
}

// 3. The doubly degenerate level near 1.4635 splits when (1,1,1) is isolated.
Outcome splitting() {
  const auto& base = shared.ham(16, 16, 4, Boundary::reflecting).eigensystem();
  const auto& broken = broken16().eigensystem();
  double level = 0.0;
  bool found = false;
  for (const auto& g : base.groups) {
    const double v = base.values(static_cast<Eigen::Index>(g.begin));
    if (g.size() == 2 && std::abs(v - 1.4635) <= 5e-4) {
      level = v;
      found = true;
    }
  }
  const auto window = values_in(broken, 1.4615, 1.4645);
  bool split = window.size() == 2 && std::abs(window[1] - window[0]) > broken.tolerance;
  split = split && window[0] < level && window[1] > level;
  return {found && split, fmt::format("base level {:.8f} (x2); broken values in window: {}", level,
                                      fmt::join(window, ", "))};
}

// 4. The isolated vertex carries an exact E = 0 eigenstate.
Outcome anderson() {
  const auto& e = broken16().eigensystem();
  double best_ipr = 0.0;
  Eigen::Index at = -1;
  for (Eigen::Index i = 0; i < e.values.size() && e.values(i) <= 1e-10; ++i) {
    if (std::abs(e.values(i)) > 1e-10) continue;
    const double ipr = inverse_participation_ratio(e.vectors.col(i));
    if (ipr > best_ipr) {
      best_ipr = ipr;
      e.vectors.col(i).cwiseAbs().maxCoeff(&at);
    }
  }
  const bool ok = std::abs(best_ipr - 1.0) <= 1e-10 && at == 0;
  return {ok, fmt::format("IPR {:.12f} peaked at index {}", best_ipr, at)};
}

// 5. Family weights of left and right starts.
Outcome subspace() {
  const auto& H = shared.ham(16, 16, 4, Boundary::periodic);
  const auto& basis = shared.periodic16();
  double err = 0.0;
  for (double t : {0.0, 3.0, 12.0}) {
    const auto l = subspace_weights(basis, evolve(H, {8, 8, 4}, t).amplitudes);
    const auto r = subspace_weights(basis, evolve(H, {8, 8, 8}, t).amplitudes);
    err = std::max({err, std::abs(l.left - 0.75), std::abs(l.both - 0.25), std::abs(l.right),
                    std::abs(r.right - 0.75), std::abs(r.both - 0.25), std::abs(r.left)});
  }
  return {err <= 1e-9, fmt::format("max deviation from (3/4, 1/4, 0) = {:.3g}", err)};
}

// 6. Quantum localization versus classical spreading.
Outcome contrast() {
  const auto& g = shared.graph(16, 16, 4, Boundary::periodic);
  const auto& H = shared.ham(16, 16, 4, Boundary::periodic);
  const VertexCoord v0{8, 8, 4};
  const auto q = limiting_distribution(H, v0).values;
  double off = 0.0;
  for (Eigen::Index v = 0; v < q.size(); ++v) {
    const auto c = index_to_coords(static_cast<std::size_t>(v), g.dims());
    if (!(c.n == v0.n && c.mu <= 4)) off += q(v);
  }
  const auto p = classical_ctrw(H, v0, 1000.0).values;
  const double dev = (p.array() - 1.0 / 2048).abs().maxCoeff();
  return {off <= 0.25 + 0.02 && dev <= 1e-6,
          fmt::format("quantum mass off column = {:.4f}; classical max |p - 1/2048| = {:.3g}", off, dev)};
}

// 7. Projector formula against a numerical time average.
Outcome time_average() {
  const auto& H = shared.ham(4, 4, 4, Boundary::reflecting);
  const VertexCoord v0{2, 3, 2};
  const auto pbar = limiting_distribution(H, v0).values;
  const double tau = 200.0;
  const int samples = 2000;
  const double dt = tau / samples;
  const Eigen::MatrixXcd step = (std::complex<double>(0.0, -dt) * H.matrix().cast<std::complex<double>>()).exp();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(128);
  psi(static_cast<Eigen::Index>(coords_to_index(v0, H.dims()))) = 1.0;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(128);
  for (int k = 0; k < samples; ++k) {
    acc += psi.cwiseAbs2();
    psi = step * psi;
  }
  const double d = (pbar - acc / samples).cwiseAbs().sum();
  return {d <= 2e-2, fmt::format("1-norm(projector - time average) = {:.4g}", d)};
}

// 8. Broken-vertex distances for constrained breakage.
Outcome distances() {
  const auto& base = shared.graph(16, 16, 4, Boundary::reflecting);
  const VertexCoord v0{8, 8, 4};
  const auto ref = limiting_distribution(shared.ham(16, 16, 4, Boundary::reflecting), v0).values;
  std::vector<double> avoid, require;
  int paired = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (auto kind : {RowColConstraint::Kind::avoid, RowColConstraint::Kind::require}) {
      const auto g = diminish(base, 0.02, seed, {kind, 8, 8});
      const double d = compare_fields(ref, limiting_distribution(hamiltonian(g), v0).values);
      (kind == RowColConstraint::Kind::avoid ? avoid : require).push_back(d);
    }
    paired += require.back() > avoid.back();
  }
  const double ma = median(avoid);
  const double mr = median(require);
  return {ma < mr, fmt::format("median avoid {:.4f} (anchor 0.0565), median require {:.4f} (anchor 0.3043), "
                               "require > avoid in {}/20 pairs",
                               ma, mr, paired)};
}

// 9. The confined left-start walker is flat along k'.
Outcome fourier() {
  const auto& g = shared.graph(16, 16, 4, Boundary::periodic);
  const auto& H = shared.ham(16, 16, 4, Boundary::periodic);
  const auto psi = evolve(H, {8, 8, 4}, 12.0).amplitudes;
  const auto confined = project_family(shared.periodic16(), psi, Family::left);
  const double rsd = kprime_flatness(fourier2d(confined, g.dims(), Side::left));
  return {rsd < 0.1, fmt::format("max relative std along k' on dominant rows = {:.3g}", rsd)};
}

// 10. Adiabatic preparation on the smallest periodic graph.
Outcome adiabatic() {
  const auto& g = shared.graph(2, 2, 2, Boundary::periodic);
  const auto& H = shared.ham(2, 2, 2, Boundary::periodic);
  const Eigen::MatrixXd target = target_hamiltonian(H.matrix(), symmetry_set(g), std::numbers::pi, 2.0);
  const double spacing = min_level_spacing(target);
  bool sums = true;
  double best = 0.0, best_T = 0.0;
  std::vector<std::string> sweep;
  for (double T : {1.0, 10.0, 100.0, 1000.0}) {
    Schedule s;
    s.T = T;
    s.steps = static_cast<int>(std::ceil(20 * T));
    s.onsite = default_onsite(g.vertex_count());
    const auto r = adiabatic_evolve(s, target, 0);
    sums = sums && std::abs(r.fidelities.sum() - 1.0) <= 1e-9;
    sweep.push_back(fmt::format("T={:g}: {:.4f}", T, r.max_fidelity()));
    if (r.max_fidelity() > best) {
      best = r.max_fidelity();
      best_T = T;
    }
  }
  const bool ok = spacing > 1e-6 && best >= 0.9 && sums;
  return {ok, fmt::format("min spacing {:.4g}; best {:.4f} at T={:g} ({})", spacing, best, best_T,
                          fmt::join(sweep, ", "))};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// 11. Identical configs reproduce byte-identical CSV outputs.
Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "chimera_walk_acceptance";
  fs::remove_all(root);
  const std::vector<nlohmann::json> configs{
      {{"experiment", "walk"},
       {"graph", {{"M", 16}, {"N", 16}, {"L", 4}, {"boundary", "reflecting"}}},
       {"v0", {8, 8, 4}},
       {"t", 12}},
      {{"experiment", "distance"},
       {"graph", {{"M", 8}, {"N", 8}, {"L", 4}, {"fraction", 0.02}, {"constraint", {{"kind", "require"}, {"m", 4}, {"n", 4}}}}},
       {"v0", {4, 4, 4}},
       {"seeds", {3, 4}}},
      {{"experiment", "spectrum"}, {"graph", {{"M", 4}, {"N", 4}, {"L", 4}, {"boundary", "periodic"}}}},
      {{"experiment", "adiabatic"}, {"graph", {{"M", 2}, {"N", 2}, {"L", 2}, {"boundary", "periodic"}}}, {"T_sweep", {10}}},
  };
  int files = 0;
  bool same = true;
  for (auto doc : configs) {
    std::vector<RunResult> runs;
    for (const char* tag : {"a", "b"}) {
      doc["output"] = (root / (doc["experiment"].get<std::string>() + tag)).string();
      runs.push_back(run(parse_config(doc)));
    }
    for (const auto& f : runs[0].outputs) {
      if (f.size() < 4 || f.substr(f.size() - 4) != ".csv") continue;
      ++files;
      same = same && slurp(runs[0].directory / f) == slurp(runs[1].directory / f);
    }
  }
  fs::remove_all(root);
  return {same && files > 0, fmt::format("{} CSV files compared", files)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"commutation suite", commutation},
      {"spectrum oracle", spectrum_oracle},
      {"degeneracy splitting", splitting},
      {"anderson localization", anderson},
      {"subspace weights", subspace},
      {"localization contrast", contrast},
      {"limiting-distribution oracle", time_average},
      {"broken-vertex distances", distances},
      {"fourier flatness", fourier},
      {"adiabatic protocol", adiabatic},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %2zu %-30s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
