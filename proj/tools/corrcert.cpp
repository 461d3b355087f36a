// Experiment runner: randomized certifications, Gowers computations, witness
// extraction, and the counterexample demos, all reproducible from a config.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "corrcert/certify.hpp"
#include "corrcert/extract.hpp"
#include "corrcert/gowers.hpp"
#include "corrcert/instances.hpp"
#include "corrcert/io.hpp"
#include "corrcert/rng.hpp"

using namespace corrcert;

namespace {

struct Config {
  std::string experiment;
  std::string dist = "ap";  // ap | cube | xor | xorsubset | random
  int p = 3;
  int q = 2;
  int n = 2;
  int k = 3;
  int d = 2;
  int r = 2;
  double delta = 1e-3;
  double epsilon = 0.05;
  double tolerance = 1e-9;
  double demo_threshold = 0.5;
  long long trials = 20;
  std::uint64_t seed = 1;
  std::string input;   // optional function file for the gowers experiment
  std::string output;  // empty = stdout

  std::map<std::string, std::string> echo() const {
    std::map<std::string, std::string> kv;
    kv["experiment"] = experiment;
    kv["dist"] = dist;
    kv["p"] = std::to_string(p);
    kv["q"] = std::to_string(q);
    kv["n"] = std::to_string(n);
    kv["k"] = std::to_string(k);
    kv["d"] = std::to_string(d);
    kv["r"] = std::to_string(r);
    kv["delta"] = format_double(delta);
    kv["epsilon"] = format_double(epsilon);
    kv["tolerance"] = format_double(tolerance);
    kv["demo_threshold"] = format_double(demo_threshold);
    kv["trials"] = std::to_string(trials);
    kv["seed"] = std::to_string(seed);
    if (!input.empty()) kv["input"] = input;
    return kv;
  }
};

void apply_config_file(Config& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return (b == std::string::npos) ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "experiment") cfg.experiment = value;
    else if (key == "dist") cfg.dist = value;
    else if (key == "p") cfg.p = std::stoi(value);
    else if (key == "q") cfg.q = std::stoi(value);
    else if (key == "n") cfg.n = std::stoi(value);
    else if (key == "k") cfg.k = std::stoi(value);
    else if (key == "d") cfg.d = std::stoi(value);
    else if (key == "r") cfg.r = std::stoi(value);
    else if (key == "delta") cfg.delta = std::stod(value);
    else if (key == "epsilon") cfg.epsilon = std::stod(value);
    else if (key == "tolerance") cfg.tolerance = std::stod(value);
    else if (key == "demo_threshold") cfg.demo_threshold = std::stod(value);
    else if (key == "trials") cfg.trials = std::stoll(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "input") cfg.input = value;
    else if (key == "output") cfg.output = value;
    else throw std::runtime_error("config line " + std::to_string(lineno) + ": unknown key " + key);
  }
}

struct TrialRow {
  long long trial_id = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  double slack = 0.0;
  std::string note;
};

struct Report {
  std::vector<std::string> header_lines;
  std::vector<TrialRow> rows;
  long long pass_count = 0;
  long long fail_count = 0;

  void add(TrialRow row) {
    (row.holds ? pass_count : fail_count) += 1;
    rows.push_back(std::move(row));
  }
};

void render(const Config& cfg, const Report& report, std::ostream& os) {
  os << "# corrcert report\n";
  for (const auto& [key, value] : cfg.echo()) os << "# " << key << " = " << value << "\n";
  os << "# rng = " << kRngName << "\n";
  os << "# montecarlo_rng = " << kMonteCarloRng << "\n";
  os << "# partitions = 1\n";
  for (const auto& line : report.header_lines) os << "# " << line << "\n";
  os << "# pass = " << report.pass_count << " fail = " << report.fail_count << "\n";
  os << "trial_id,lhs,rhs,holds,slack,note\n";
  for (const auto& row : report.rows) {
    os << row.trial_id << "," << format_double(row.lhs) << "," << format_double(row.rhs) << ","
       << (row.holds ? 1 : 0) << "," << format_double(row.slack) << "," << row.note << "\n";
  }
}

JointDistribution make_distribution(const Config& cfg, std::uint64_t trial_seed) {
  if (cfg.dist == "ap") return ap_distribution(cfg.p, cfg.k);
  if (cfg.dist == "cube") return gowers_cube_distribution(cfg.p, cfg.d);
  if (cfg.dist == "xor") return xor_triple_distribution();
  if (cfg.dist == "xorsubset") return xor_subset_distribution(2, {{0, 1}});
  if (cfg.dist == "random") return random_pairwise_independent(trial_seed);
  throw std::runtime_error("unknown dist: " + cfg.dist);
}

std::vector<OrthonormalBasis> bases_for_joint(const JointDistribution& mu) {
  std::vector<OrthonormalBasis> bases;
  for (int i = 0; i < mu.arity(); ++i) bases.push_back(basis_for(mu.marginal(i)));
  return bases;
}

Report run_certify_main(const Config& cfg) {
  Report report;
  for (long long t = 0; t < cfg.trials; ++t) {
    std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    JointDistribution mu = make_distribution(cfg, s);
    auto bases = bases_for_joint(mu);
    Rng rng(s);
    std::vector<FourierRepresentation> fs;
    for (int i = 0; i < mu.arity(); ++i)
      fs.push_back(generate_random_sparse_lowdeg(mu.components()[i].size(), cfg.n,
                                                 std::min(cfg.d, cfg.n), 8, rng.next_u64(), true));
    auto cert = certify_main(fs, mu, bases, cfg.tolerance);
    report.add(TrialRow{t, cert.lhs, cert.rhs, cert.holds, cert.slack, cert.name});
  }
  return report;
}

Report run_certify_roth(const Config& cfg) {
  Report report;
  for (long long t = 0; t < cfg.trials; ++t) {
    std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    JointDistribution mu = (cfg.dist == "xor") ? xor_triple_distribution()
                                               : ap_distribution(cfg.p, 3);
    auto bases = bases_for_joint(mu);
    Rng rng(s);
    std::vector<FourierRepresentation> fs;
    for (int i = 0; i < 3; ++i)
      fs.push_back(generate_random_sparse_lowdeg(mu.components()[i].size(), cfg.n,
                                                 std::min(cfg.d, cfg.n), 8, rng.next_u64(), true));
    auto cert = certify_roth(fs, mu, bases, cfg.tolerance);
    report.add(TrialRow{t, cert.lhs, cert.rhs, cert.holds, cert.slack, cert.name});
  }
  return report;
}

Report run_certify_holder(const Config& cfg) {
  Report report;
  for (long long t = 0; t < cfg.trials; ++t) {
    std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    JointDistribution mu = make_distribution(cfg, s);
    auto bases = bases_for_joint(mu);
    int k = mu.arity();
    Rng rng(s);
    std::vector<DenseFunction> fs;
    for (int i = 0; i < k; ++i) {
      DenseFunction f = generate_random_bounded(std::vector<int>(cfg.n, mu.components()[i].size()),
                                                rng.next_u64());
      auto measures = measures_of(replicate(bases[i], cfg.n));
      double norm = lp_norm(f, k, measures);
      if (norm > 0)
        for (std::int64_t x = 0; x < f.size(); ++x) f[x] /= (norm + 1e-12);
      fs.push_back(std::move(f));
    }
    auto cert = certify_holder_truncation(fs, mu, bases, cfg.d, cfg.tolerance);
    report.add(TrialRow{t, cert.lhs, cert.rhs, cert.holds, cert.slack, cert.name});
  }
  return report;
}

Report run_gowers(const Config& cfg) {
  Report report;
  std::optional<DenseFunction> loaded;
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw std::runtime_error("cannot open input file: " + cfg.input);
    loaded = read_dense_function(in);
  }
  long long trials = loaded ? 1 : cfg.trials;
  for (long long t = 0; t < trials; ++t) {
    std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    DenseFunction f = loaded ? *loaded
                             : generate_random_bounded(std::vector<int>(cfg.n, cfg.p), s);
    int p = f.alphabet_sizes().empty() ? cfg.p : f.alphabet_sizes()[0];
    auto direct = gowers_direct(f, cfg.d);
    auto recursive = gowers_recursive(f, cfg.d);
    auto cube = gowers_via_cube_nip(f, cfg.d);
    double spread = std::max({std::abs(direct.value - recursive.value),
                              std::abs(direct.value - cube.value)});
    if (cfg.d == 2) {
      auto rep = transform(f, replicate(standard_fourier_basis(p), f.dimension()));
      spread = std::max(spread, std::abs(direct.value - u2_closed_form(rep).value));
    }
    report.add(TrialRow{t, spread, cfg.tolerance, spread <= cfg.tolerance,
                        cfg.tolerance - spread, "route-agreement"});
  }
  return report;
}

Report run_inverse_gowers(const Config& cfg) {
  Report report;
  for (long long t = 0; t < cfg.trials; ++t) {
    std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    auto rep = generate_random_lowdeg(cfg.p, cfg.n, std::min(cfg.d, cfg.n), s, true);
    auto dense = inverse_transform(rep, replicate(standard_fourier_basis(cfg.p), cfg.n));
    auto cert = certify_inverse_gowers(dense, cfg.p, cfg.d, cfg.k, cfg.epsilon, cfg.tolerance);
    report.add(TrialRow{t, cert.lhs, cert.rhs, cert.holds, cert.slack, cert.name});
  }
  return report;
}

Report run_ap_distinguish(const Config& cfg) {
  Report report;
  for (long long t = 0; t < cfg.trials; ++t) {
    std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    Rng rng(s);
    std::vector<DenseFunction> fs;
    for (int i = 0; i < cfg.k; ++i) {
      auto rep = generate_random_lowdeg(cfg.p, cfg.n, std::min(cfg.d, cfg.n), rng.next_u64(), true);
      fs.push_back(inverse_transform(rep, replicate(standard_fourier_basis(cfg.p), cfg.n)));
    }
    auto r = certify_ap_distinguisher(fs, cfg.p, cfg.d, cfg.epsilon, cfg.tolerance);
    std::string note = r.triggered ? (r.triple_found ? "triggered:triple-found" : "triggered")
                                   : "vacuous";
    report.add(TrialRow{t, r.delta_gap, cfg.epsilon, !r.theorem_violation,
                        cfg.epsilon - r.delta_gap, note});
  }
  return report;
}

Report run_extract(const Config& cfg) {
  Report report;
  for (long long t = 0; t < cfg.trials; ++t) {
    std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    JointDistribution mu = make_distribution(cfg, s);
    auto bases = bases_for_joint(mu);
    Rng rng(s);
    int coord = rng.below(cfg.n);
    auto inst = make_planted_instance(mu, bases, cfg.n, coord, 1, 0.02, rng.next_u64());
    auto w = extract_witness(inst.fs, mu, bases, inst.delta_witness);
    auto fam = extract_family(inst.fs, mu, bases, inst.delta_family, cfg.r);
    std::vector<DenseFunction> dense;
    for (int i = 0; i < mu.arity(); ++i)
      dense.push_back(inverse_transform(inst.fs[i], replicate(bases[i], cfg.n)));
    bool ok = w.has_value() && fam.has_value() && verify_witness(*w, dense, mu, bases) &&
              verify_family(*fam, dense, mu, bases);
    TrialRow row{t, w ? w->corr_mag : 0.0,
                 w ? w->delta * w->delta * pow_degree(w->C, w->D) : 0.0, ok, 0.0,
                 w ? witness_record(*w) : std::string("none")};
    row.slack = row.lhs - row.rhs;
    report.add(row);
  }
  return report;
}

// The noninvariance demo: over the xor column law the triple
// (f(x), f(y), f(z)) always has a zero coordinate, while under the product
// law a constant fraction keeps all three large.
Report run_demo_xor(const Config& cfg) {
  Report report;
  int n = cfg.n;
  auto mu = xor_triple_distribution();
  std::vector<int> sizes(n, 2);
  DenseFunction f = DenseFunction::zeros(sizes);
  std::vector<int> point(n, 0);
  std::int64_t flat = 0;
  do {
    double x1 = 2.0 * point[0] - 1.0;
    double s = 0.0;
    for (int j = 1; j < n; ++j) s += 2.0 * point[j] - 1.0;
    f[flat++] = Complex((x1 - 1.0) * s / std::sqrt(static_cast<double>(n)), 0.0);
  } while (next_point(point, sizes));

  // exhaustive over support(mu)^n column assignments
  std::int64_t supp = static_cast<std::int64_t>(mu.support().size());
  std::vector<int> columns(n, 0);
  bool always_zero = true;
  std::vector<std::vector<int>> rows(3, std::vector<int>(n));
  while (true) {
    for (int j = 0; j < n; ++j) {
      const auto& tuple = mu.support()[columns[j]].first;
      for (int i = 0; i < 3; ++i) rows[i][j] = tuple[i];
    }
    double m = std::min({std::abs(f.at(rows[0])), std::abs(f.at(rows[1])),
                         std::abs(f.at(rows[2]))});
    if (m != 0.0) always_zero = false;
    int j = n - 1;
    while (j >= 0 && columns[j] == static_cast<int>(supp) - 1) columns[j--] = 0;
    if (j < 0) break;
    ++columns[j];
  }

  // product law: fraction of triples with all three values >= threshold
  std::int64_t big = 0, total = 0;
  std::vector<int> xyz(3 * n, 0);
  std::vector<int> xyz_sizes(3 * n, 2);
  do {
    std::vector<int> x(xyz.begin(), xyz.begin() + n);
    std::vector<int> y(xyz.begin() + n, xyz.begin() + 2 * n);
    std::vector<int> z(xyz.begin() + 2 * n, xyz.end());
    double m = std::min({std::abs(f.at(x)), std::abs(f.at(y)), std::abs(f.at(z))});
    if (m >= cfg.demo_threshold) ++big;
    ++total;
  } while (next_point(xyz, xyz_sizes));
  double fraction = static_cast<double>(big) / static_cast<double>(total);

  report.header_lines.push_back("zero-coordinate support property: " +
                                std::string(always_zero ? "confirmed" : "VIOLATED"));
  report.header_lines.push_back("product-law fraction with min |f| >= " +
                                format_double(cfg.demo_threshold) + ": " + format_double(fraction));
  report.add(TrialRow{0, always_zero ? 0.0 : 1.0, 0.0, always_zero, 0.0, "support-on-zeros"});
  report.add(TrialRow{1, cfg.demo_threshold, fraction, fraction > 0.0, fraction, "product-fraction"});
  return report;
}

Report run_demo_quadratic(const Config& cfg) {
  Report report;
  int n = cfg.n;
  std::vector<int> sizes(n, 2);
  DenseFunction f = DenseFunction::zeros(sizes);
  std::vector<int> x(n, 0);
  std::int64_t flat = 0;
  do {
    int s = 0;
    for (int i = 0; i + 1 < n; ++i) s ^= x[i] & x[i + 1];
    f[flat++] = s ? Complex(-1, 0) : Complex(1, 0);
  } while (next_point(x, sizes));

  auto u3 = gowers_norm(f, 3);
  auto rep = transform(f, replicate(standard_fourier_basis(2), n));
  double max_coeff = rep.sup_coefficient(true);

  report.header_lines.push_back("||f||_{U^3} = " + format_double(u3.value) +
                                " (route " + (u3.route == GowersRoute::recursive ? "recursive" : "direct") + ")");
  report.header_lines.push_back("max |f^(sigma)| = " + format_double(max_coeff));
  report.add(TrialRow{0, std::abs(u3.value - 1.0), cfg.tolerance,
                      std::abs(u3.value - 1.0) <= cfg.tolerance, 0.0, "u3-norm"});
  double expected = (n == 8) ? 0.0625 : max_coeff;
  report.add(TrialRow{1, std::abs(max_coeff - expected), 1e-12,
                      std::abs(max_coeff - expected) <= 1e-12, 0.0, "max-coefficient"});
  return report;
}

Report run_demo_allzeros(const Config& cfg) {
  Report report;
  int n = cfg.n;
  auto mu = xor_subset_distribution(2, {{0, 1}});
  int k = mu.arity();
  std::vector<int> sizes(n, 2);
  DenseFunction f = DenseFunction::zeros(sizes);
  f[0] = Complex(1, 0);  // indicator of the all-zeros string

  std::vector<DenseFunction> fs(k, f);
  Complex nip = nip_bruteforce(fs, mu).value;

  // per-column all-zero probability, checked exhaustively over the support
  double p0 = 0.0;
  for (const auto& [tuple, mass] : mu.support()) {
    bool zero = true;
    for (int a : tuple) zero = zero && (a == 0);
    if (zero) p0 += mass;
  }
  double expected = std::pow(p0, n);

  auto bases = replicate(standard_fourier_basis(2), n);
  auto rep = transform(f, bases);
  double l2 = rep.l2_norm();
  double prod_norms = std::pow(l2, k - 1);
  double delta = rep.sup_coefficient(true);

  report.header_lines.push_back("<f,...,f> = " + format_double(nip.real()) +
                                " (Pr[all-zero column]^n = " + format_double(expected) + ")");
  report.header_lines.push_back("||f||_2 = " + format_double(l2) +
                                ", prod_{i>=2} ||f||_2 = " + format_double(prod_norms) +
                                ", max coefficient delta = " + format_double(delta));
  report.header_lines.push_back("ratio nip / prod ||f||_2 = " + format_double(nip.real() / prod_norms) +
                                " = delta: no lambda(gamma,delta) = o(delta) bound can hold");
  report.add(TrialRow{0, std::abs(nip.real() - expected), cfg.tolerance,
                      std::abs(nip.real() - expected) <= cfg.tolerance, 0.0, "nip-equals-p0^n"});
  report.add(TrialRow{1, nip.real() / prod_norms, delta,
                      std::abs(nip.real() / prod_norms - delta) <= cfg.tolerance, 0.0,
                      "ratio-equals-delta"});
  return report;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrcert: noise-correlation bound certification experiments"};
  std::string config_path;
  Config cfg;
  std::optional<std::string> experiment, dist, output;
  std::optional<int> p, q, n, k, d, r;
  std::optional<double> delta, epsilon, tol, demo_threshold;
  std::optional<long long> trials;
  std::optional<std::uint64_t> seed;

  app.add_option("--config", config_path, "config file (key=value lines, # comments)");
  app.add_option("--experiment", experiment,
                 "certify-main|certify-roth|certify-holder|gowers|inverse-gowers|"
                 "ap-distinguish|extract|demo-xor-noninvariance|demo-quadratic-phase|demo-allzeros");
  app.add_option("--dist", dist, "ap|cube|xor|xorsubset|random");
  app.add_option("--p", p, "prime modulus");
  app.add_option("--q", q, "alphabet size (echoed; generators take the modulus from --p)");
  app.add_option("--n", n, "number of coordinates");
  app.add_option("--k", k, "number of functions");
  app.add_option("--d", d, "degree bound / cube dimension");
  app.add_option("--r", r, "declared independence order");
  app.add_option("--delta", delta, "uniformity parameter");
  app.add_option("--epsilon", epsilon, "gap parameter");
  app.add_option("--tol", tol, "certificate tolerance");
  app.add_option("--demo-threshold", demo_threshold, "demo level (default 0.5)");
  app.add_option("--trials", trials, "number of trials");
  app.add_option("--seed", seed, "master seed");
  std::optional<std::string> input;
  app.add_option("--input", input, "function file for the gowers experiment");
  app.add_option("--out", output, "report path (default stdout)");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (experiment) cfg.experiment = *experiment;
    if (dist) cfg.dist = *dist;
    if (p) cfg.p = *p;
    if (q) cfg.q = *q;
    if (n) cfg.n = *n;
    if (k) cfg.k = *k;
    if (d) cfg.d = *d;
    if (r) cfg.r = *r;
    if (delta) cfg.delta = *delta;
    if (epsilon) cfg.epsilon = *epsilon;
    if (tol) cfg.tolerance = *tol;
    if (demo_threshold) cfg.demo_threshold = *demo_threshold;
    if (trials) cfg.trials = *trials;
    if (seed) cfg.seed = *seed;
    if (input) cfg.input = *input;
    if (output) cfg.output = *output;
    if (cfg.experiment.empty()) throw std::runtime_error("no experiment selected");
    if (cfg.trials < 1) throw std::runtime_error("trials must be >= 1");
    if (cfg.tolerance <= 0) throw std::runtime_error("tolerance must be positive");

    auto start = std::chrono::steady_clock::now();
    Report report;
    if (cfg.experiment == "certify-main") report = run_certify_main(cfg);
    else if (cfg.experiment == "certify-roth") report = run_certify_roth(cfg);
    else if (cfg.experiment == "certify-holder") report = run_certify_holder(cfg);
    else if (cfg.experiment == "gowers") report = run_gowers(cfg);
    else if (cfg.experiment == "inverse-gowers") report = run_inverse_gowers(cfg);
    else if (cfg.experiment == "ap-distinguish") report = run_ap_distinguish(cfg);
    else if (cfg.experiment == "extract") report = run_extract(cfg);
    else if (cfg.experiment == "demo-xor-noninvariance") report = run_demo_xor(cfg);
    else if (cfg.experiment == "demo-quadratic-phase") report = run_demo_quadratic(cfg);
    else if (cfg.experiment == "demo-allzeros") report = run_demo_allzeros(cfg);
    else throw std::runtime_error("unknown experiment: " + cfg.experiment);
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);

    if (cfg.output.empty()) {
      render(cfg, report, std::cout);
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open output file: " + cfg.output);
      render(cfg, report, out);
    }
    // timing goes to stderr only so reports stay byte-identical
    std::cerr << "corrcert: " << cfg.experiment << " finished in " << elapsed.count() << " s, pass "
              << report.pass_count << " fail " << report.fail_count << "\n";
    return report.fail_count == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "corrcert: error: " << e.what() << "\n";
    return 2;
  }
}
