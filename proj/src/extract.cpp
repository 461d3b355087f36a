#include "corrcert/extract.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace corrcert {

namespace {

struct SequenceEntry {
  FourierRepresentation rep;
  int coord = 0;        // coordinate of mu this function is applied to
  bool is_char = false; // accumulated character from an earlier round
  MultiIndex sigma;     // set when is_char
};

Degree sum_of_degrees(std::span<const FourierRepresentation> fs) {
  Degree sum{0};
  for (const auto& f : fs) sum = sum + f.degree();
  return sum;
}

void check_extract_inputs(std::span<const FourierRepresentation> fs,
                          const JointDistribution& mu,
                          std::span<const OrthonormalBasis> bases) {
  if (fs.size() != static_cast<std::size_t>(mu.arity()) || bases.size() != fs.size())
    throw std::invalid_argument("extract: need one representation and basis per component");
  for (const auto& f : fs)
    if (f.l2_norm() > 1.0 + 1e-9)
      throw std::invalid_argument("extract: ||f_i||_2 must be <= 1");
  if (!mu.is_r_wise_independent(2, 1e-9))
    throw std::invalid_argument("extract: column law is not pairwise independent");
}

ColumnMomentTensor tensor_for_tail(const JointDistribution& mu,
                                   std::span<const OrthonormalBasis> bases,
                                   std::span<const SequenceEntry> seq, std::size_t from) {
  std::vector<int> coords;
  std::vector<OrthonormalBasis> tail_bases;
  for (std::size_t t = from; t < seq.size(); ++t) {
    coords.push_back(seq[t].coord);
    tail_bases.push_back(bases[seq[t].coord]);
  }
  return build_column_moment_tensor(mu.project(coords), tail_bases);
}

std::vector<FourierRepresentation> tail_reps(std::span<const SequenceEntry> seq,
                                             std::size_t from,
                                             const FourierRepresentation& head) {
  std::vector<FourierRepresentation> reps;
  reps.push_back(head);
  for (std::size_t t = from + 1; t < seq.size(); ++t) reps.push_back(seq[t].rep);
  return reps;
}

struct RoundHit {
  std::size_t position = 0;
  MultiIndex sigma;
  Complex t_value;
  double coeff_mag = 0.0;
};

// One telescoping scan over the sequence: find the
// first position p with |<F_p - E F_p, tail>| > scan_bar, then among
// A = {sigma != 0 : |F_p^(sigma)| > coeff_bar} return the sigma maximizing
// |t(sigma)| (lexicographic tie-break via the map's iteration order).
std::optional<RoundHit> scan_sequence(std::span<const SequenceEntry> seq,
                                      const JointDistribution& mu,
                                      std::span<const OrthonormalBasis> bases,
                                      double scan_bar, double coeff_bar,
                                      bool stop_at_first_hit, std::vector<RoundHit>* all_hits) {
  std::size_t m = seq.size();
  std::size_t first_char = m;
  for (std::size_t t = 0; t < m; ++t)
    if (seq[t].is_char) {
      first_char = t;
      break;
    }

  std::optional<RoundHit> first;
  for (std::size_t p = 0; p + 2 < m && p <= first_char; ++p) {
    ColumnMomentTensor tensor = tensor_for_tail(mu, bases, seq, p);
    FourierRepresentation centered = seq[p].rep.mean_zero_part();
    Complex t_p = nip_fourier(tail_reps(seq, p, centered), tensor).value;
    if (std::abs(t_p) <= scan_bar) continue;

    RoundHit hit;
    hit.position = p;
    bool found = false;
    for (const auto& [sigma, c] : seq[p].rep.coefficients()) {
      if (weight(sigma) == 0 || std::abs(c) <= coeff_bar) continue;
      FourierRepresentation chi = unit_character(seq[p].rep.alphabet_sizes(), sigma);
      Complex t = nip_fourier(tail_reps(seq, p, chi), tensor).value;
      if (!found || std::abs(t) > std::abs(hit.t_value)) {
        hit.sigma = sigma;
        hit.t_value = t;
        hit.coeff_mag = std::abs(c);
        found = true;
      }
    }
    if (!found)
      throw TheoremViolation("extract: qualifying scan position has no coefficient above delta");
    if (all_hits) all_hits->push_back(hit);
    if (!first) first = hit;
    if (stop_at_first_hit) return first;
  }
  return first;
}

}  // namespace

std::optional<Witness> extract_witness(std::span<const FourierRepresentation> fs,
                                       const JointDistribution& mu,
                                       std::span<const OrthonormalBasis> bases,
                                       double delta) {
  check_extract_inputs(fs, mu, bases);
  if (delta <= 0.0) throw std::invalid_argument("extract_witness: delta must be positive");
  int k = static_cast<int>(fs.size());
  if (k <= 2) return std::nullopt;

  Degree D = sum_of_degrees(fs);
  if (D.is_bottom()) return std::nullopt;  // some f_i is 0, correlation vanishes
  BoundConstants bc = constants_for(mu, bases);
  double cd = pow_degree(bc.C, D);

  ColumnMomentTensor full = build_column_moment_tensor(mu, bases);
  double corr = std::abs(noise_correlation(fs, full));
  if (corr <= 2.0 * delta * (k - 2) * cd) return std::nullopt;

  std::vector<SequenceEntry> seq;
  for (int i = 0; i < k; ++i) seq.push_back(SequenceEntry{fs[i], i, false, {}});
  auto hit = scan_sequence(seq, mu, bases, 2.0 * delta * cd, delta, true, nullptr);
  if (!hit)
    throw TheoremViolation("extract_witness: hypothesis met but no scan position qualifies");
  if (std::abs(hit->t_value) <= delta * delta * cd)
    throw TheoremViolation("extract_witness: extracted correlation below delta^2 C^D");

  Witness w;
  w.index = static_cast<int>(hit->position);
  w.sigma = hit->sigma;
  w.coeff_mag = hit->coeff_mag;
  w.corr_mag = std::abs(hit->t_value);
  w.delta = delta;
  w.C = bc.C;
  w.D = D;
  return w;
}

std::vector<Witness> extract_witness_all(std::span<const FourierRepresentation> fs,
                                         const JointDistribution& mu,
                                         std::span<const OrthonormalBasis> bases,
                                         double delta) {
  check_extract_inputs(fs, mu, bases);
  if (delta <= 0.0) throw std::invalid_argument("extract_witness_all: delta must be positive");
  int k = static_cast<int>(fs.size());
  std::vector<Witness> out;
  if (k <= 2) return out;
  Degree D = sum_of_degrees(fs);
  if (D.is_bottom()) return out;
  BoundConstants bc = constants_for(mu, bases);
  double cd = pow_degree(bc.C, D);
  ColumnMomentTensor full = build_column_moment_tensor(mu, bases);
  if (std::abs(noise_correlation(fs, full)) <= 2.0 * delta * (k - 2) * cd) return out;

  std::vector<SequenceEntry> seq;
  for (int i = 0; i < k; ++i) seq.push_back(SequenceEntry{fs[i], i, false, {}});
  std::vector<RoundHit> hits;
  scan_sequence(seq, mu, bases, 2.0 * delta * cd, delta, false, &hits);
  for (const auto& h : hits) {
    Witness w;
    w.index = static_cast<int>(h.position);
    w.sigma = h.sigma;
    w.coeff_mag = h.coeff_mag;
    w.corr_mag = std::abs(h.t_value);
    w.delta = delta;
    w.C = bc.C;
    w.D = D;
    out.push_back(std::move(w));
  }
  return out;
}

std::optional<WitnessFamily> extract_family(std::span<const FourierRepresentation> fs,
                                            const JointDistribution& mu,
                                            std::span<const OrthonormalBasis> bases,
                                            double delta, int independence_order) {
  check_extract_inputs(fs, mu, bases);
  if (delta <= 0.0) throw std::invalid_argument("extract_family: delta must be positive");
  if (independence_order < 2)
    throw std::invalid_argument("extract_family: independence order must be >= 2");
  int k = static_cast<int>(fs.size());
  if (k <= 2) return std::nullopt;

  Degree D = sum_of_degrees(fs);
  if (D.is_bottom()) return std::nullopt;
  BoundConstants bc = constants_for(mu, bases);
  double cd = pow_degree(bc.C, D);

  ColumnMomentTensor full = build_column_moment_tensor(mu, bases);
  if (std::abs(noise_correlation(fs, full)) <= cd * delta) return std::nullopt;

  WitnessFamily fam;
  fam.delta = delta;
  fam.C = bc.C;
  fam.D = D;
  fam.independence_order = independence_order;
  double delta_r = std::sqrt(delta);  // delta_0
  fam.schedule.push_back(delta_r);

  std::vector<SequenceEntry> seq;
  for (int i = 0; i < k; ++i) seq.push_back(SequenceEntry{fs[i], i, false, {}});

  auto originals_left = [&]() {
    return std::any_of(seq.begin(), seq.end(), [](const SequenceEntry& e) { return !e.is_char; });
  };

  int guard = 0;
  while (originals_left()) {
    if (++guard > k + 1)
      throw TheoremViolation("extract_family: iteration did not terminate");
    delta_r = delta_r * delta_r / (2.0 * k);
    fam.schedule.push_back(delta_r);

    auto hit = scan_sequence(seq, mu, bases, 2.0 * delta_r * cd, delta_r, true, nullptr);
    if (!hit)
      throw TheoremViolation("extract_family: no scan position qualifies at the scheduled bar");
    if (std::abs(hit->t_value) <= delta_r * delta_r * cd)
      throw TheoremViolation("extract_family: extracted correlation below delta_r^2 C^D");

    std::size_t p = hit->position;
    std::vector<SequenceEntry> next;
    if (!seq[p].is_char) {
      // Remaining originals after p stay first, accumulated characters keep
      // their order, the new character goes last.
      for (std::size_t t = p + 1; t < seq.size(); ++t)
        if (!seq[t].is_char) next.push_back(seq[t]);
      for (std::size_t t = p + 1; t < seq.size(); ++t)
        if (seq[t].is_char) next.push_back(seq[t]);
      next.push_back(SequenceEntry{unit_character(seq[p].rep.alphabet_sizes(), hit->sigma),
                                   seq[p].coord, true, hit->sigma});
      fam.sigma[seq[p].coord] = hit->sigma;
    } else {
      // The scan landed on the first accumulated character: every remaining
      // original telescopes away and the family is complete as it stands.
      for (std::size_t t = p; t < seq.size(); ++t) next.push_back(seq[t]);
    }
    seq = std::move(next);
  }

  for (const auto& [i, sigma] : fam.sigma) fam.indices.push_back(i);
  std::sort(fam.indices.begin(), fam.indices.end());

  // Re-derive the family inner product from the accumulated characters.
  {
    std::vector<int> coords;
    std::vector<OrthonormalBasis> char_bases;
    std::vector<FourierRepresentation> char_reps;
    for (const auto& e : seq) {
      coords.push_back(e.coord);
      char_bases.push_back(bases[e.coord]);
      char_reps.push_back(e.rep);
    }
    ColumnMomentTensor tensor = build_column_moment_tensor(mu.project(coords), char_bases);
    fam.family_nip = nip_fourier(char_reps, tensor).value;
  }

  // Statement-level checks: coefficients above (delta/2k)^{2^k}, family
  // inner product above C^D delta_{k+1}, coverage at least r+1 deep.
  double stmt_bar = std::pow(delta / (2.0 * k), std::pow(2.0, k));
  for (int i : fam.indices) {
    double mag = std::abs(fs[i].coefficient(fam.sigma[i]));
    if (mag <= stmt_bar)
      throw TheoremViolation("extract_family: coefficient below the statement threshold");
  }
  double sched = std::sqrt(delta);
  for (int r = 1; r <= k + 1; ++r) sched = sched * sched / (2.0 * k);
  if (std::abs(fam.family_nip) <= cd * sched)
    throw TheoremViolation("extract_family: family inner product below C^D delta_{k+1}");

  for (int i : fam.indices)
    for (int j : support_coords(fam.sigma[i])) fam.coverage[j] += 1;
  if (static_cast<int>(fam.indices.size()) < 3)
    throw TheoremViolation("extract_family: fewer than three indices");
  for (const auto& [coord, mult] : fam.coverage)
    if (mult < independence_order + 1)
      throw TheoremViolation("extract_family: coverage multiplicity below r+1");

  return fam;
}

bool verify_witness(const Witness& w, std::span<const DenseFunction> fs,
                    const JointDistribution& mu, std::span<const OrthonormalBasis> bases,
                    std::int64_t eval_cap) {
  int k = static_cast<int>(fs.size());
  int n = fs[0].dimension();
  double cd = pow_degree(w.C, w.D);

  // Coefficient straight from the defining inner product.
  auto coord_bases = replicate(bases[w.index], n);
  DenseFunction chi = character_function(coord_bases, w.sigma);
  Complex coeff = 0.0;
  std::vector<int> point(n, 0);
  const auto& sizes = fs[w.index].alphabet_sizes();
  std::int64_t flat = 0;
  do {
    double mass = 1.0;
    for (int j = 0; j < n; ++j) mass *= bases[w.index].measure.mass(point[j]);
    coeff += mass * fs[w.index][flat] * std::conj(chi[flat]);
    ++flat;
  } while (next_point(point, sizes));
  if (std::abs(coeff) <= w.delta) return false;

  std::vector<int> coords;
  for (int c = w.index; c < mu.arity(); ++c) coords.push_back(c);
  std::vector<DenseFunction> tail;
  tail.push_back(chi);
  for (int c = w.index + 1; c < k; ++c) tail.push_back(fs[c]);
  Complex t = nip_bruteforce(tail, mu.project(coords), eval_cap).value;
  if (std::abs(t) <= w.delta * w.delta * cd) return false;

  if (std::abs(std::abs(coeff) - w.coeff_mag) > 1e-8) return false;
  if (std::abs(std::abs(t) - w.corr_mag) > 1e-8) return false;
  return true;
}

bool verify_family(const WitnessFamily& fam, std::span<const DenseFunction> fs,
                   const JointDistribution& mu, std::span<const OrthonormalBasis> bases,
                   std::int64_t eval_cap) {
  if (static_cast<int>(fam.indices.size()) < 3) return false;
  int n = fs[0].dimension();
  int k = static_cast<int>(fs.size());

  double stmt_bar = std::pow(fam.delta / (2.0 * k), std::pow(2.0, k));
  std::map<int, int> coverage;
  std::vector<int> coords;
  std::vector<DenseFunction> chis;
  for (int i : fam.indices) {
    const MultiIndex& sigma = fam.sigma.at(i);
    if (weight(sigma) == 0) return false;
    auto coord_bases = replicate(bases[i], n);
    DenseFunction chi = character_function(coord_bases, sigma);
    Complex coeff = 0.0;
    std::vector<int> point(n, 0);
    std::int64_t flat = 0;
    do {
      double mass = 1.0;
      for (int j = 0; j < n; ++j) mass *= bases[i].measure.mass(point[j]);
      coeff += mass * fs[i][flat] * std::conj(chi[flat]);
      ++flat;
    } while (next_point(point, fs[i].alphabet_sizes()));
    if (std::abs(coeff) <= stmt_bar) return false;
    for (int j : support_coords(sigma)) coverage[j] += 1;
    coords.push_back(i);
    chis.push_back(std::move(chi));
  }
  for (const auto& [coord, mult] : coverage)
    if (mult < fam.independence_order + 1) return false;

  Complex nip = nip_bruteforce(chis, mu.project(coords), eval_cap).value;
  if (std::abs(nip - fam.family_nip) > 1e-8) return false;
  return std::abs(nip) > 0.0;
}

}  // namespace corrcert
