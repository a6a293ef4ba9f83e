#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "arithbar/analyze.hpp"
#include "arithbar/consensus.hpp"
#include "arithbar/digits.hpp"
#include "arithbar/document.hpp"
#include "arithbar/error.hpp"
#include "arithbar/snf.hpp"
#include "json.hpp"

namespace {

using namespace arithbar;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitDisagreement = 3;

struct CommonFlags {
  std::optional<std::uint64_t> prime;
  std::optional<int> precision;
  std::string format = "text";
  std::string out;

  RingOverride ring() const { return {prime, precision}; }
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--p", flags.prime, "Override the prime of the input file");
  cmd->add_option("--precision", flags.precision, "Override the working precision m");
  cmd->add_option("--format", flags.format, "Output on stdout")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  cmd->add_option("--out", flags.out, "Also write the structured report to this file");
}

void emit(const CommonFlags& flags, const std::string& text, const std::string& structured) {
  std::cout << (flags.format == "structured" ? structured : text);
  if (!flags.out.empty()) {
    std::ofstream f(flags.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::ValidationError, "cannot write '" + flags.out + "'");
    f << structured;
  }
}

ordered_json valuations_json(const std::vector<Valuation>& v) {
  ordered_json out = ordered_json::array();
  for (const Valuation& x : v) {
    if (x.is_censored())
      out.push_back(">=" + std::to_string(x.value()));
    else
      out.push_back(x.value());
  }
  return out;
}

std::string join(const std::vector<Valuation>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

ordered_json barcode_json(const Barcode& b) {
  return {{"finite", b.finite_bars}, {"infinite", b.infinite_bars}, {"censored", b.censored_bars}};
}

int cmd_analyze(const CommonFlags& flags, const std::string& path, bool inject) {
  const SheafDocument doc = parse_sheaf_file(path, flags.ring());
  const BarcodeReport report = run_analyze(effective_sheaf(doc), AnalyzeOptions{inject});
  emit(flags, format_text(report), format_json(report));
  return report.agreement() ? kExitOk : kExitDisagreement;
}

int cmd_snf(const CommonFlags& flags, const std::string& path, bool minors) {
  const DvrMatrix delta = load_coboundary_text(read_text_file(path), flags.ring());
  const SnfResult snf = smith_normal_form(delta);
  const CokernelStructure coker = cokernel_structure(snf, delta.rows());
  std::ostringstream text;
  text << "ring: " << delta.ring() << "\n"
       << "shape: " << delta.rows() << " x " << delta.cols() << "\n"
       << "smith exponents: " << join(snf.exponents) << "\n"
       << "rank: " << snf.rank << "\n"
       << "cokernel: free rank " << coker.free_rank << ", torsion " << join(coker.torsion_exponents) << "\n";
  ordered_json j = {{"ring", delta.ring().name()},
                    {"rows", delta.rows()},
                    {"cols", delta.cols()},
                    {"exponents", valuations_json(snf.exponents)},
                    {"rank", snf.rank},
                    {"cokernel", {{"free_rank", coker.free_rank}, {"torsion", valuations_json(coker.torsion_exponents)}}}};
  if (minors) {
    const DeterminantalProfile prof = determinantal_valuations(delta);
    text << "determinantal valuations: " << join(prof.s) << "\n";
    j["determinantal_valuations"] = valuations_json(prof.s);
  }
  emit(flags, text.str(), j.dump(2) + "\n");
  return kExitOk;
}

int cmd_digits(const CommonFlags& flags, const std::string& path) {
  const DvrMatrix delta = load_coboundary_text(read_text_file(path), flags.ring());
  const DigitProfile prof = digit_profile(delta);
  const DigitExponents ex = exponents_from_digits(prof);
  const std::size_t bock = bockstein_rank(delta);
  std::ostringstream text;
  text << "ring: " << delta.ring() << "\n" << "digit ranks:";
  for (std::size_t d : prof.d) text << " " << d;
  text << (prof.stabilized ? "  (stabilized)" : "  (not stabilized)") << "\n";
  text << "exponents from digits:";
  for (int a : ex.exponents) text << " " << a;
  if (ex.precision_limited) text << "  (precision-limited, " << prof.censored << " censored)";
  text << "\nbockstein rank: " << bock << "\n";
  const ordered_json j = {{"ring", delta.ring().name()},
                          {"d", prof.d},
                          {"stabilized", prof.stabilized},
                          {"censored", prof.censored},
                          {"exponents", ex.exponents},
                          {"precision_limited", ex.precision_limited},
                          {"bockstein_rank", bock}};
  emit(flags, text.str(), j.dump(2) + "\n");
  return kExitOk;
}

int cmd_holonomy(const CommonFlags& flags, const std::string& path) {
  const SheafDocument doc = parse_sheaf_file(path, flags.ring());
  // The analyze report carries the holonomy table and blockwise result.
  const BarcodeReport report = run_analyze(effective_sheaf(doc));
  std::ostringstream text;
  ordered_json cycles = ordered_json::array();
  text << "ring: " << report.ring << "\n";
  if (report.holonomy.rows.empty())
    text << (report.holonomy.note.empty() ? "no cycles" : report.holonomy.note) << "\n";
  for (const HolonomyRow& row : report.holonomy.rows) {
    text << "cycle " << row.cycle << " via " << row.defining_edge << ":";
    for (const std::string& s : row.path) text << " " << s;
    ordered_json c = {{"cycle", row.cycle}, {"defining_edge", row.defining_edge}, {"path", row.path}};
    if (row.scalar) {
      text << "  h = " << *row.scalar << "  val(h-1) = " << valuation(*row.scalar - DvrElement::one(report.ring));
      c["h"] = row.scalar->residue();
      c["bar_kind"] = row.bar->kind == CycleBarKind::Empty    ? "empty"
                      : row.bar->kind == CycleBarKind::Finite ? "finite"
                                                              : "infinite";
      c["bar_length"] = row.bar->length;
    } else {
      text << "  H - I exponents " << join(row.exponents);
      c["exponents"] = valuations_json(row.exponents);
    }
    text << "\n";
    cycles.push_back(std::move(c));
  }
  ordered_json j = {{"ring", report.ring.name()}, {"cycles", std::move(cycles)}, {"note", report.holonomy.note}};
  if (report.blockwise) {
    text << "blockwise barcode: " << describe(*report.blockwise) << "\n";
    j["blockwise"] = barcode_json(*report.blockwise);
  } else if (report.blockwise_failure != BlockFailure::None) {
    text << "blockwise barcode: declined (" << to_string(report.blockwise_failure) << ")\n";
    j["blockwise"] = {{"declined", to_string(report.blockwise_failure)}};
  }
  emit(flags, text.str(), j.dump(2) + "\n");
  return kExitOk;
}

int cmd_stability(const CommonFlags& flags, const std::string& lhs, const std::string& rhs) {
  const DvrMatrix a = load_coboundary_text(read_text_file(lhs), flags.ring());
  const DvrMatrix b = load_coboundary_text(read_text_file(rhs), flags.ring());
  const StabilityResult s = stability_check(a, b);
  std::ostringstream text;
  text << "congruence level: " << s.congruence_level << "\n"
       << "first:  " << describe(s.lhs) << "\n"
       << "second: " << describe(s.rhs) << "\n"
       << "bars below the congruence level agree: " << (s.truncated_equal ? "yes" : "NO") << "\n";
  const ordered_json j = {{"congruence_level", valuations_json({s.congruence_level})[0]},
                          {"first", barcode_json(s.lhs)},
                          {"second", barcode_json(s.rhs)},
                          {"truncated_equal", s.truncated_equal}};
  emit(flags, text.str(), j.dump(2) + "\n");
  return s.truncated_equal ? kExitOk : kExitDisagreement;
}

int cmd_consensus(const CommonFlags& flags, const std::string& path, std::optional<int> from, std::optional<int> to) {
  const SheafDocument doc = parse_sheaf_file(path, flags.ring());
  const int m = doc.sheaf.ring().precision();
  const ClockSheaf clock = build_clock_sheaf(clock_network(doc), m);
  const int lo = from.value_or(1), hi = to.value_or(m);
  if (lo < 1 || hi > m || lo > hi)
    throw Error(ErrorCode::ValidationError, "bit range must lie within [1, " + std::to_string(m) + "]");

  std::ostringstream text;
  ordered_json j;
  j["precision"] = m;
  const DetectionReport base = detection_report(clock, lo);
  text << "clock network over Z/2^" << m << ", " << base.cycles.size() << " fundamental cycle(s)\n";
  ordered_json cycles = ordered_json::array();
  for (const CycleDetection& c : base.cycles) {
    text << "  cycle " << c.cycle << " via " << c.defining_edge << ": val(h-1) = " << c.bar;
    if (c.residual_exponent != 0) text << "  rate-scale inconsistent (residual 2^" << c.residual_exponent << ")";
    text << "\n";
    cycles.push_back({{"cycle", c.cycle},
                      {"defining_edge", c.defining_edge},
                      {"bar", valuations_json({c.bar})[0]},
                      {"residual_exponent", c.residual_exponent}});
  }
  j["cycles"] = std::move(cycles);
  ordered_json by_bits = ordered_json::array();
  for (int b = lo; b <= hi; ++b) {
    const DetectionReport rep = detection_report(clock, b);
    text << "  b = " << b << ": detectable";
    ordered_json det = ordered_json::array();
    for (const CycleDetection& c : rep.cycles)
      if (c.detectable) {
        text << " " << c.defining_edge;
        det.push_back(c.defining_edge);
      }
    if (det.empty()) text << " none";
    text << "\n";
    by_bits.push_back({{"bits", b}, {"detectable", std::move(det)}});
  }
  j["detection"] = std::move(by_bits);
  j["recommended_bits"] = base.recommended_bits;
  text << "recommended bits: " << base.recommended_bits << "\n";
  emit(flags, text.str(), j.dump(2) + "\n");
  return kExitOk;
}

int cmd_selftest(const CommonFlags& flags, std::uint64_t seed, std::size_t trials) {
  const SelftestResult r = run_selftest(seed, trials);
  std::ostringstream text;
  text << "selftest seed " << seed << ": " << r.trials << " trials, " << r.failures.size() << " failure(s)\n";
  for (const std::string& f : r.failures) text << "  " << f << "\n";
  const ordered_json j = {{"seed", seed}, {"trials", r.trials}, {"failures", r.failures}};
  emit(flags, text.str(), j.dump(2) + "\n");
  return r.failures.empty() ? kExitOk : kExitDisagreement;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::InvalidRing:
    case ErrorCode::RankMismatch:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::InvalidGraph:
      return kExitInvalidInput;
    default:
      return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Valuation barcodes of network sheaves over truncated discrete valuation rings"};
  app.require_subcommand(1);
  CommonFlags flags;

  std::string file, second;
  bool inject = false, minors = false;
  std::optional<int> bits_from, bits_to;
  std::uint64_t seed = 1;
  std::size_t trials = 200;

  auto* analyze = app.add_subcommand("analyze", "Full pipeline: Smith, digit and holonomy routes, compared");
  analyze->add_option("file", file, "Sheaf description file")->required();
  analyze->add_flag("--inject-disagreement", inject)->group("");
  add_common(analyze, flags);

  auto* snf = app.add_subcommand("snf", "Smith normal form of a matrix or of a sheaf coboundary");
  snf->add_option("file", file, "Matrix or sheaf file")->required();
  snf->add_flag("--minors", minors, "Also enumerate minors for the determinantal valuations");
  add_common(snf, flags);

  auto* digits = app.add_subcommand("digits", "Digit rank profile and Bockstein rank");
  digits->add_option("file", file, "Matrix or sheaf file")->required();
  add_common(digits, flags);

  auto* holonomy = app.add_subcommand("holonomy", "Per-cycle holonomy table");
  holonomy->add_option("file", file, "Sheaf file")->required();
  add_common(holonomy, flags);

  auto* stability = app.add_subcommand("stability", "Compare barcodes of two congruent coboundaries");
  stability->add_option("first", file, "Matrix or sheaf file")->required();
  stability->add_option("second", second, "Matrix or sheaf file")->required();
  add_common(stability, flags);

  auto* consensus = app.add_subcommand("consensus", "Cycle detection thresholds for a clock network");
  consensus->add_option("file", file, "Sheaf file with a clock block")->required();
  consensus->add_option("--bits-from", bits_from, "Smallest bit budget to report (default 1)");
  consensus->add_option("--bits-to", bits_to, "Largest bit budget to report (default m)");
  add_common(consensus, flags);

  auto* selftest = app.add_subcommand("selftest", "Randomized Smith vs digit route comparison");
  selftest->add_option("--seed", seed, "Random seed")->capture_default_str();
  selftest->add_option("--trials", trials, "Number of random matrices")->capture_default_str();
  add_common(selftest, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*analyze) return cmd_analyze(flags, file, inject);
    if (*snf) return cmd_snf(flags, file, minors);
    if (*digits) return cmd_digits(flags, file);
    if (*holonomy) return cmd_holonomy(flags, file);
    if (*stability) return cmd_stability(flags, file, second);
    if (*consensus) return cmd_consensus(flags, file, bits_from, bits_to);
    if (*selftest) return cmd_selftest(flags, seed, trials);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
