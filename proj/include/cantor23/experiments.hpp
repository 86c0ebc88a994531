#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantor23/cantor.hpp"
#include "cantor23/psi.hpp"
#include "cantor23/sampling.hpp"

namespace cantor23 {

// ---------------- certified hit counting ----------------

enum class HitVerdict { hit, miss, uncertain, psi_undefined };

const char* verdict_name(HitVerdict v);

struct HitRow {
  std::uint64_t n = 0;
  HitVerdict verdict = HitVerdict::uncertain;
};

struct HitResult {
  std::vector<HitRow> rows;
  std::uint64_t hits = 0, misses = 0, uncertain = 0, undefined = 0;
};

// Exact orbit of a rational: ||base^n alpha|| is p_n/q with a fixed
// denominator, compared against the enclosure [psi-, psi+] of psi at n.
// hit is declared only when ||.|| < psi-, miss only when ||.|| >= psi+;
// the sliver between the brackets is uncertain. Budget: n_max <= 10^6.
HitResult hit_count(const Rat& alpha, int base, const PsiSpec& psi, std::uint64_t n_max);

// Same for a truncated sample: the value is known to within 3^-depth, so
// ||base^n x|| is known to within base^n 3^-depth, and that error joins the
// comparison on the safe side. Budget: n_max <= 10^6.
HitResult hit_count_sampled(const SampledPoint& x, int base, const PsiSpec& psi,
                            std::uint64_t n_max);

// ---------------- partial sums of the governing series ----------------

enum class SeriesKind { benchmark, main_convergence, lsv_triadic, conditional };

struct SeriesRow {
  std::uint64_t n = 0;  // checkpoint, a power of two (plus the final n_max)
  double partial = 0;
};

struct SeriesResult {
  std::vector<SeriesRow> rows;
  double total = 0;
  std::uint64_t first_term = 1;  // smallest n whose term is fully defined
  std::string verdict_hint;      // "converging" | "diverging" | "inconclusive"
};

// Terms at index n:
//   benchmark / lsv_triadic   psi_n^gamma   (dyadic and triadic labels of the
//                                            same n-indexed values)
//   main_convergence          2^(-ln n/(lnln n lnlnln n)) psi_n^gamma + psi_n
//                             (first summand defined from n = 16; below that
//                              only psi_n is counted)
//   conditional               psi_n + 2^(-eps h_c ln(n ln 2))
// verdict_hint compares the last octave increments; it is a diagnostic label
// about the finite data, never a claim about the infinite series.
SeriesResult series_eval(SeriesKind kind, const PsiSpec& psi, std::uint64_t n_max,
                         double eps = 1.0, double h_c = 1.0);

// ---------------- per-n audit of the convergence-side schedule ----------------

struct ConvergenceRow {
  std::uint64_t n = 0;
  int k_n = 1;                      // min(3 floor(ln n/(lnln n lnlnln n)), floor(-log2 psi)+1), clamped to >= 1
  bool log_branch_defined = false;  // the first argument of the min exists (n >= 16)
  int M = 0, N = 0;                 // 3^(-5-M) < 2^(-n-k_n) <= 3^(-4-M); 3^(1-N) < psi/(5 2^n) <= 3^(2-N)
  bool valid_drop = false;          // psi/(125 2^n) <= 3^-N <= 5 psi/2^n <= 3^-M <= 2^(9-n)
  bool ambiguous = false;           // the psi enclosure straddles a scale boundary
  Rat mu_lo, mu_hi;                 // enclosure of mu(A_n), balls of radius psi-+/2^n
  double psi_value = 0;
  double bound_term = 0;            // 2^(-k_n (1-gamma)) psi^gamma
};

// Budget: n_hi <= 26.
std::vector<ConvergenceRow> convergence_audit(const PsiSpec& psi, std::uint64_t n_lo,
                                              std::uint64_t n_hi);

// ---------------- lemma-shaped exact comparisons ----------------

struct ConnectionAudit {
  Int count_inner = 0, count_outer = 0;
  Rat lower, upper, mu;  // 2^-(N+1) count_inner <= mu(B ∩ I) <= 2^-(N-1) count_outer
  bool ok = false;
};

// B = theta + A_n with ball radius r. Hypotheses enforced: N >= 1,
// 3^-N <= r/5, and 2^-n below the half-length of I unless I = [0,1].
// The shrunk/dilated copies of I leave [0,1] fixed.
ConnectionAudit connection_audit(int n, int N, const Rat& r, const Rat& theta,
                                 const RationalInterval& I);

struct DroppingAudit {
  Int count_fine = 0;    // |C_N ∩ 5 A_n|, ball radius 5 r
  Int count_coarse = 0;  // |C_M ∩ 5 A_n(M)|, ball radius 5 3^-M
  double ratio = 0;      // count_fine / count_coarse
  bool valid = false;    // r/125 <= 3^-N <= 5 r <= 3^-M <= 2^(9-n), checked exactly
};

DroppingAudit dropping_audit(int n, int M, int N, const Rat& r, const Rat& theta);

struct ShiftingAudit {
  Int count_full = 0;   // |C_M ∩ (t A_n(M) + theta) ∩ I|
  Int count_short = 0;  // |C_(M-J) ∩ (t A_n(M-J) + theta) ∩ I|
  bool ok = false;      // count_short + 1 >= 2^-(J+1) count_full
};

// Hypothesis enforced: 2 t 3^-(M-J) < 2^-n (short-level balls stay disjoint).
ShiftingAudit shifting_audit(int n, const Rat& t, const Rat& theta, int M, int J,
                             const RationalInterval& I);

// ---------------- second-moment (pairwise overlap) audit ----------------

enum class PsiSide { lower, upper };

struct PairRow {
  std::uint64_t i = 0, j = 0;
  Rat mu;             // mu(A_i ∩ A_j ∩ I), exact
  Rat overlap_ratio;  // mu / (2^(i-j) psi_j + psi_i psi_j) for i < j, else 0
};

struct PairwiseResult {
  std::uint64_t n_lo = 0, n_hi = 0;
  std::uint64_t n_plus = 0;  // window end the analysis asks for
  bool capped = false;       // n_hi < n_plus under the window budget
  std::vector<Rat> mu_levels;  // mu(A_i ∩ I), i = n_lo..n_hi
  std::vector<PairRow> pairs;  // all i <= j
  Rat sum_mu;                // sum_i mu(A_i ∩ I)
  Rat sum_pairs;             // sum over ordered pairs of mu(A_i ∩ A_j ∩ I)
  Rat mu_union;              // mu(union A_i ∩ I)
  Rat bound;                 // sum_mu^2 / sum_pairs
  bool ok = false;           // bound <= mu_union, exact rational comparison
  // largest overlap_ratio over i < j and where it occurs
  Rat max_overlap_ratio;
  std::uint64_t ratio_i = 0, ratio_j = 0;
};

// A_i has ball radius psi_i/2^i with psi_i the chosen side of the enclosure,
// so every measure is an exact rational and the final comparison has zero
// tolerance. The window is min(n_plus, n_lo + window_cap): the analysis
// window floor(ln n/(lnln n lnlnln n)) is far beyond exact-measure budgets
// at auditable n, so capped = true is the norm and is reported, not hidden.
// Budgets: n_lo >= 16 (iterated logs), window_cap <= 24, and a piece guard.
PairwiseResult chung_erdos_audit(const PsiSpec& psi, std::uint64_t n_lo, int window_cap,
                                 PsiSide side, const RationalInterval& I,
                                 long piece_budget = 1l << 25);

}  // namespace cantor23
