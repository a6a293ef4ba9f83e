#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "arithbar/dvr.hpp"
#include "arithbar/holonomy.hpp"
#include "arithbar/matrix.hpp"
#include "arithbar/sheaf.hpp"

namespace arithbar {

/// Positive rational clock-rate ratio w_e = numerator / denominator.
struct Ratio {
  std::int64_t numerator = 1;
  std::int64_t denominator = 1;
};

struct ClockNetwork {
  Graph graph;
  std::vector<Ratio> ratios;
};

/// Rank-1 sheaf over Z/2^m built from a clock network after gauging the
/// powers of two away along a spanning forest.
struct ClockSheaf {
  NetworkSheaf sheaf;
  CycleBasis basis;
  /// w_e = 2^kappa_e * u_e.
  std::vector<std::int64_t> kappa;
  std::vector<DvrElement> units;
  /// Vertex gauge gamma_v = 2^s_v, chosen so every tree edge carries a unit.
  std::vector<std::int64_t> gauge_exponents;
  /// Power of two left on each fundamental cycle after gauging (signed sum of
  /// kappa around it). Nonzero means the rates are inconsistent in scale.
  std::vector<std::int64_t> residual_exponents;

  bool rate_scale_consistent() const;
};

/// Throws ValidationError on non-positive ratios or a ratio count that does
/// not match the edge count.
ClockSheaf build_clock_sheaf(const ClockNetwork& network, int precision);

struct CycleDetection {
  std::size_t cycle = 0;
  std::string defining_edge;
  /// val(h - 1) of the unit part of the holonomy; Censored(m) when h = 1.
  Valuation bar = Valuation::exact(0);
  std::int64_t residual_exponent = 0;
  /// h differs from 1 mod 2^b. Scale-inconsistent cycles always count.
  bool detectable = false;
};

struct DetectionReport {
  int bits = 0;
  std::vector<CycleDetection> cycles;
  /// 1 + the largest uncensored bar over scale-consistent cycles, 1 if none.
  int recommended_bits = 1;
};

/// Throws ValidationError unless 1 <= bits <= precision.
DetectionReport detection_report(const ClockSheaf& clock, int bits);
DetectionReport detection_report(const ClockNetwork& network, int bits, int precision);

/// Rank-d sheaf with tail restriction T_e and head restriction I, so the
/// relative transform along e is T_e. Throws SingularTransform or RankMismatch.
NetworkSheaf build_vector_sheaf(const Graph& graph, const Ring& ring, const std::vector<DvrMatrix>& transforms,
                                std::size_t d);

struct CycleAnisotropy {
  std::size_t cycle = 0;
  std::vector<Valuation> exponents;
  /// Uncensored exponents >= 1.
  std::vector<int> bars;
  int spread = 0;
};

std::vector<CycleAnisotropy> anisotropy_report(const NetworkSheaf& sheaf);

}  // namespace arithbar
