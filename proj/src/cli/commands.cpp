#include "urllc/cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "urllc/ber_metrics.hpp"
#include "urllc/cipc_sim.hpp"
#include "urllc/cli/kv_config.hpp"
#include "urllc/cli/output.hpp"
#include "urllc/lob_sim.hpp"
#include "urllc/secrecy_metrics.hpp"

namespace urllc::cli {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

std::vector<double> parse_real_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument(what + ": cannot parse '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw std::invalid_argument(what + ": cannot parse '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<std::int64_t> out;
  for (double v : parse_real_list(text, what)) {
    if (v != std::floor(v) || v < 1) throw std::invalid_argument(what + ": entries must be positive integers");
    out.push_back(static_cast<std::int64_t>(v));
  }
  return out;
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + format_real(values[i]);
  return out;
}

std::string join(const std::vector<std::int64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Shared option groups

struct Constraints {
  double beta_b = 1e-6;
  double beta_e = 0.5;

  void add_to(CLI::App* app) {
    app->add_option("--beta-b", beta_b, "Max decoding-error probability at Bob")->capture_default_str();
    app->add_option("--beta-e", beta_e, "Min decoding-error probability at Eve")->capture_default_str();
  }
  ConstraintPair resolve() const { return ConstraintPair{Probability(beta_b), Probability(beta_e)}; }
  void record(Manifest& m) const {
    m.add("beta-b", beta_b);
    m.add("beta-e", beta_e);
    for (const auto& w : resolve().warnings()) m.warn(w);
  }
};

struct Approximation {
  bool log_term = false;

  void add_to(CLI::App* app) {
    app->add_option("--log-term", log_term, "Include the (log2 n)/(2n) correction")->capture_default_str();
  }
  ApproximationConfig resolve() const { return ApproximationConfig{log_term}; }
  void record(Manifest& m) const { m.add("log-term", log_term); }
};

std::string manifest_path(const std::string& out) { return out + ".manifest"; }

void finish_file(const Manifest& m, const std::string& out_path, std::ostream& out) {
  m.write(manifest_path(out_path));
  out << "wrote " << out_path << " (manifest " << manifest_path(out_path) << ")\n";
}

void print_table(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width)) << k << " = " << v << '\n';
}

// ---------------------------------------------------------------------------
// fig2

struct Fig2 {
  std::string n_list = "100,200,500,1000,2000";
  double snr_db = 10.0;
  std::optional<double> rate_min;
  std::optional<double> rate_max;
  std::int64_t steps = 200;
  Approximation approx;
  std::string out;
  std::string svg;

  void add_to(CLI::App* app) {
    app->add_option("--n-list", n_list, "Comma-separated blocklengths")->capture_default_str();
    app->add_option("--snr-db", snr_db, "SNR in dB")->capture_default_str();
    app->add_option("--rate-min", rate_min, "Lowest rate, bits/use (default 0.1 C)");
    app->add_option("--rate-max", rate_max, "Highest rate, bits/use (default 1.2 C)");
    app->add_option("--steps", steps, "Number of rate points")->capture_default_str();
    approx.add_to(app);
    app->add_option("--out", out, "CSV output path")->required();
    app->add_option("--svg", svg, "Optional SVG plot path");
  }

  int run(std::ostream& os) const {
    const auto ns = parse_int_list(n_list, "--n-list");
    const SnrValue gamma = SnrValue::from_db(snr_db);
    const double c = capacity(gamma).value();
    const double lo = rate_min.value_or(0.1 * c);
    const double hi = rate_max.value_or(1.2 * c);
    if (steps < 1) throw std::invalid_argument("--steps must be >= 1");
    if (!(lo >= 0.0) || !(hi >= lo)) throw std::invalid_argument("rate range must satisfy 0 <= rate-min <= rate-max");
    const ApproximationConfig cfg = approx.resolve();

    std::vector<double> rates(static_cast<std::size_t>(steps));
    for (std::int64_t i = 0; i < steps; ++i) {
      rates[static_cast<std::size_t>(i)] = steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    if (steps > 1) rates.back() = hi;

    CsvWriter csv(out);
    csv.row({"n", "rate", "epsilon"});
    std::vector<PlotSeries> series;
    for (const auto n : ns) {
      PlotSeries s{"n = " + std::to_string(n), {}, {}};
      for (const double r : rates) {
        const double eps = error_probability(Blocklength(n), CodingRate(r), gamma, cfg).value();
        csv.row({std::to_string(n), format_real(r), format_prob(eps)});
        s.x.push_back(r);
        s.y.push_back(eps);
      }
      series.push_back(std::move(s));
    }
    csv.close();

    Manifest m("fig2");
    m.add("n-list", join(ns));
    m.add("snr-db", snr_db);
    m.add("rate-min", lo);
    m.add("rate-max", hi);
    m.add("steps", steps);
    approx.record(m);
    m.add("out", out);
    if (!svg.empty()) {
      m.add("svg", svg);
      write_svg_plot(svg, {"Error probability vs coding rate", "rate R (bits/use)", "epsilon", true}, series);
    }
    finish_file(m, out, os);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// fig3

struct Fig3 {
  std::int64_t n_min = 10;
  std::int64_t n_max = 10000;
  std::int64_t n_step = 1;
  double snr_b_db = 10.0;
  double snr_e_db = 0.0;
  Constraints constraints;
  Approximation approx;
  std::string out;
  std::string svg;

  void add_to(CLI::App* app) {
    app->add_option("--n-min", n_min)->capture_default_str();
    app->add_option("--n-max", n_max)->capture_default_str();
    app->add_option("--n-step", n_step)->capture_default_str();
    app->add_option("--snr-b-db", snr_b_db, "Bob's SNR in dB")->capture_default_str();
    app->add_option("--snr-e-db", snr_e_db, "Eve's SNR in dB")->capture_default_str();
    constraints.add_to(app);
    approx.add_to(app);
    app->add_option("--out", out, "CSV output path")->required();
    app->add_option("--svg", svg, "Optional SVG plot path");
  }

  int run(std::ostream& os) const {
    if (n_min < 1 || n_max < n_min || n_step < 1) throw std::invalid_argument("need 1 <= n-min <= n-max and n-step >= 1");
    const SnrValue gb = SnrValue::from_db(snr_b_db);
    const SnrValue ge = SnrValue::from_db(snr_e_db);
    const ConstraintPair cp = constraints.resolve();
    const ApproximationConfig cfg = approx.resolve();

    CsvWriter csv(out);
    csv.row({"n", "r_b_eps", "r_e_eps", "delta_r", "feasible"});
    PlotSeries rb{"R_b^eps", {}, {}};
    PlotSeries re{"R_e^eps", {}, {}};
    for (std::int64_t n = n_min; n <= n_max; n += n_step) {
      const SecrecyAssessment a = rate_interval(Blocklength(n), gb, ge, cp, cfg);
      csv.row({std::to_string(n), format_real(a.r_sup.value()), format_real(a.r_inf.value()), format_real(a.delta_r),
               format_bool(a.feasible)});
      rb.x.push_back(static_cast<double>(n));
      rb.y.push_back(a.r_sup.value());
      re.x.push_back(static_cast<double>(n));
      re.y.push_back(a.r_inf.value());
    }
    csv.close();

    Manifest m("fig3");
    m.add("n-min", n_min);
    m.add("n-max", n_max);
    m.add("n-step", n_step);
    m.add("snr-b-db", snr_b_db);
    m.add("snr-e-db", snr_e_db);
    constraints.record(m);
    approx.record(m);
    m.add("out", out);
    if (!svg.empty()) {
      m.add("svg", svg);
      write_svg_plot(svg, {"Rate bounds vs blocklength", "blocklength n", "rate (bits/use)", false}, {rb, re});
    }
    finish_file(m, out, os);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// gap, ber-gap, interval, minblock

struct Gap {
  std::int64_t n = 500;
  double rate = 1.0;
  Constraints constraints;
  Approximation approx;
  std::string out;

  void add_to(CLI::App* app) {
    app->add_option("--n", n, "Blocklength")->capture_default_str();
    app->add_option("--rate", rate, "Coding rate, bits/use")->capture_default_str();
    constraints.add_to(app);
    approx.add_to(app);
    app->add_option("--out", out, "Optional CSV output path");
  }

  int run(std::ostream& os) const {
    const SecurityGap g = security_gap(Blocklength(n), CodingRate(rate), constraints.resolve(), approx.resolve());
    Manifest m("gap");
    m.add("n", n);
    m.add("rate", rate);
    constraints.record(m);
    approx.record(m);
    print_table(os, {{"snr_b_min_db", format_real(g.snr_b_min.db())},
                     {"snr_e_max_db", format_real(g.snr_e_max.db())},
                     {"gap_linear", format_real(g.gap_linear)},
                     {"gap_db", format_real(g.gap_db)}});
    if (!out.empty()) {
      m.add("out", out);
      CsvWriter csv(out);
      csv.row({"n", "rate", "snr_b_min_db", "snr_e_max_db", "gap_linear", "gap_db"});
      csv.row({std::to_string(n), format_real(rate), format_real(g.snr_b_min.db()), format_real(g.snr_e_max.db()),
               format_real(g.gap_linear), format_real(g.gap_db)});
      csv.close();
      finish_file(m, out, os);
    }
    m.print(os);
    return kExitOk;
  }
};

struct BerGap {
  std::int64_t code_n = 127;
  std::int64_t code_t = 10;
  double ber_max_b = 1e-5;
  double ber_min_e = 0.49;
  std::string out;

  void add_to(CLI::App* app) {
    app->add_option("--code-n", code_n, "Code block size in bits")->capture_default_str();
    app->add_option("--code-t", code_t, "Error-correction capability in bits")->capture_default_str();
    app->add_option("--ber-max-b", ber_max_b, "Max post-decoding BER at Bob")->capture_default_str();
    app->add_option("--ber-min-e", ber_min_e, "Min post-decoding BER at Eve")->capture_default_str();
    app->add_option("--out", out, "Optional CSV output path");
  }

  int run(std::ostream& os) const {
    const BerSecurityGap g =
        ber_security_gap(CodeSpec{code_n, code_t}, BerThresholds{Probability(ber_max_b), Probability(ber_min_e)});
    Manifest m("ber-gap");
    m.add("code-n", code_n);
    m.add("code-t", code_t);
    m.add("ber-max-b", ber_max_b);
    m.add("ber-min-e", ber_min_e);
    if (g.snr_e_at_bracket_edge) m.warn("Eve's threshold sits at the bottom of the SNR search bracket");
    print_table(os, {{"snr_b_min_db", format_real(g.snr_b_min.db())},
                     {"snr_e_max_db", format_real(g.snr_e_max.db())},
                     {"gap_db", format_real(g.gap_db)},
                     {"snr_e_at_bracket_edge", format_bool(g.snr_e_at_bracket_edge)}});
    if (!out.empty()) {
      m.add("out", out);
      CsvWriter csv(out);
      csv.row({"n_bits", "t", "snr_b_min_db", "snr_e_max_db", "gap_db", "snr_e_at_bracket_edge"});
      csv.row({std::to_string(code_n), std::to_string(code_t), format_real(g.snr_b_min.db()),
               format_real(g.snr_e_max.db()), format_real(g.gap_db), format_bool(g.snr_e_at_bracket_edge)});
      csv.close();
      finish_file(m, out, os);
    }
    m.print(os);
    return kExitOk;
  }
};

struct Interval {
  std::int64_t n = 200;
  double snr_b_db = 10.0;
  double snr_e_db = 0.0;
  Constraints constraints;
  Approximation approx;
  std::string out;

  void add_to(CLI::App* app) {
    app->add_option("--n", n, "Blocklength")->capture_default_str();
    app->add_option("--snr-b-db", snr_b_db, "Bob's SNR in dB")->capture_default_str();
    app->add_option("--snr-e-db", snr_e_db, "Eve's SNR in dB")->capture_default_str();
    constraints.add_to(app);
    approx.add_to(app);
    app->add_option("--out", out, "Optional CSV output path");
  }

  int run(std::ostream& os) const {
    const SnrValue gb = SnrValue::from_db(snr_b_db);
    const SnrValue ge = SnrValue::from_db(snr_e_db);
    const SecrecyAssessment a = rate_interval(Blocklength(n), gb, ge, constraints.resolve(), approx.resolve());
    const double cs = asymptotic_secrecy_capacity(gb, ge);
    Manifest m("interval");
    m.add("n", n);
    m.add("snr-b-db", snr_b_db);
    m.add("snr-e-db", snr_e_db);
    constraints.record(m);
    approx.record(m);
    print_table(os, {{"r_sup", format_real(a.r_sup.value())},
                     {"r_inf", format_real(a.r_inf.value())},
                     {"delta_r", format_real(a.delta_r)},
                     {"feasible", format_bool(a.feasible)},
                     {"secrecy_capacity", format_real(cs)}});
    if (!out.empty()) {
      m.add("out", out);
      CsvWriter csv(out);
      csv.row({"n", "snr_b_db", "snr_e_db", "r_sup", "r_inf", "delta_r", "feasible", "secrecy_capacity"});
      csv.row({std::to_string(n), format_real(snr_b_db), format_real(snr_e_db), format_real(a.r_sup.value()),
               format_real(a.r_inf.value()), format_real(a.delta_r), format_bool(a.feasible), format_real(cs)});
      csv.close();
      finish_file(m, out, os);
    }
    m.print(os);
    return kExitOk;
  }
};

struct MinBlock {
  double snr_b_db = 10.0;
  double snr_e_db = 0.0;
  std::int64_t n_max = 1000000;
  Constraints constraints;
  Approximation approx;
  std::string out;

  void add_to(CLI::App* app) {
    app->add_option("--snr-b-db", snr_b_db, "Bob's SNR in dB")->capture_default_str();
    app->add_option("--snr-e-db", snr_e_db, "Eve's SNR in dB")->capture_default_str();
    app->add_option("--n-max", n_max, "Largest blocklength searched")->capture_default_str();
    constraints.add_to(app);
    approx.add_to(app);
    app->add_option("--out", out, "Optional CSV output path");
  }

  int run(std::ostream& os) const {
    const auto n_star = min_blocklength(SnrValue::from_db(snr_b_db), SnrValue::from_db(snr_e_db),
                                        constraints.resolve(), approx.resolve(), n_max);
    if (!n_star) {
      throw UnsatisfiableError(ConstraintSide::kReliability,
                               "no blocklength up to " + std::to_string(n_max) +
                                   " meets the reliability constraint (beta_b) at a rate above the security bound "
                                   "R_inf set by beta_e");
    }
    Manifest m("minblock");
    m.add("snr-b-db", snr_b_db);
    m.add("snr-e-db", snr_e_db);
    m.add("n-max", n_max);
    constraints.record(m);
    approx.record(m);
    print_table(os, {{"n_min", std::to_string(*n_star)}});
    if (!out.empty()) {
      m.add("out", out);
      CsvWriter csv(out);
      csv.row({"snr_b_db", "snr_e_db", "n_min"});
      csv.row({format_real(snr_b_db), format_real(snr_e_db), std::to_string(*n_star)});
      csv.close();
      finish_file(m, out, os);
    }
    m.print(os);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------
// Simulators

struct Simulation {
  std::int64_t n = 200;
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  Constraints constraints;
  Approximation approx;

  void add_to(CLI::App* app) {
    app->add_option("--n", n, "Blocklength")->capture_default_str();
    app->add_option("--trials", trials, "Monte Carlo trials")->capture_default_str();
    app->add_option("--seed", seed, "Master RNG seed")->capture_default_str();
    app->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
    constraints.add_to(app);
    approx.add_to(app);
  }
  void record(Manifest& m) const {
    m.add("n", n);
    m.add("trials", trials);
    m.add("seed", std::to_string(seed));
    constraints.record(m);
    approx.record(m);
  }
};

struct Cipc {
  double q = 1.0;
  double p_max = 10.0;
  int antennas = 1;
  double noise_b = 0.1;
  double noise_e = 0.1;
  double sigma_delta = 0.0;
  std::string truncation = "suspend";
  Simulation sim;
  std::string out;

  void add_common(CLI::App* app) {
    app->add_option("--p-max", p_max, "Max transmit power (linear, 'inf' allowed)")->capture_default_str();
    app->add_option("--antennas", antennas, "User transmit antennas")->capture_default_str();
    app->add_option("--noise-b", noise_b, "Noise power at the base station")->capture_default_str();
    app->add_option("--noise-e", noise_e, "Noise power at Eve")->capture_default_str();
    app->add_option("--sigma-delta", sigma_delta, "Reciprocity error std per coefficient")->capture_default_str();
    app->add_option("--truncation", truncation, "Policy when P_t exceeds p-max")
        ->check(CLI::IsMember({"suspend", "clamp"}))
        ->capture_default_str();
    sim.add_to(app);
    app->add_option("--out", out, "CSV output path")->required();
  }
  void add_to(CLI::App* app) {
    app->add_option("--q", q, "Target received power Q (linear)")->capture_default_str();
    add_common(app);
  }

  CipcConfig resolve() const {
    CipcConfig c;
    c.q_target = q;
    c.p_max = p_max;
    c.n_antennas_tx = antennas;
    c.noise_power_bob = noise_b;
    c.noise_power_eve = noise_e;
    c.blocklength = sim.n;
    c.constraints = sim.constraints.resolve();
    c.reciprocity = ReciprocityError{sigma_delta};
    c.trials = sim.trials;
    c.seed = RngSeed{sim.seed, 0};
    c.approximation = sim.approx.resolve();
    c.truncation = truncation == "clamp" ? TruncationPolicy::kClamp : TruncationPolicy::kSuspend;
    c.threads = sim.threads;
    c.validate();
    return c;
  }
  void record_common(Manifest& m) const {
    m.add("p-max", p_max);
    m.add("antennas", static_cast<std::int64_t>(antennas));
    m.add("noise-b", noise_b);
    m.add("noise-e", noise_e);
    m.add("sigma-delta", sigma_delta);
    m.add("truncation", truncation);
    sim.record(m);
    m.add("out", out);
  }

  int run(std::ostream& os) const {
    const CipcResult r = run_cipc(resolve());
    CsvWriter csv(out);
    csv.row({"trial_id", "p_t", "gamma_b_db", "gamma_e_db", "r_sup", "r_inf", "delta_r", "feasible"});
    for (const auto& rec : r.records) {
      if (!rec.transmitted()) {
        csv.row({std::to_string(rec.trial_id), rec.degenerate ? "degenerate" : "suspended", "", "", "", "", "",
                 format_bool(false)});
        continue;
      }
      csv.row({std::to_string(rec.trial_id), format_real(*rec.p_t), format_real(rec.gamma_b.db()),
               format_real(rec.gamma_e.db()), format_real(rec.assessment.r_sup.value()),
               format_real(rec.assessment.r_inf.value()), format_real(rec.assessment.delta_r),
               format_bool(rec.assessment.feasible)});
    }
    csv.close();
    const CipcSummary& s = r.summary;
    print_table(os, {{"trials", std::to_string(s.trials)},
                     {"suspension_prob", format_real(s.suspension_prob)},
                     {"feasibility_prob", format_real(s.feasibility_prob)},
                     {"mean_delta_r", format_real(s.mean_delta_r)},
                     {"mean_gamma_e", format_real(s.mean_gamma_e)},
                     {"degenerate_trials", std::to_string(s.degenerate)}});
    Manifest m("cipc");
    m.add("q", q);
    record_common(m);
    finish_file(m, out, os);
    return kExitOk;
  }
};

struct OptimizeQ {
  Cipc base;
  std::string q_grid;
  double q_min = 1e-3;
  double q_max = 1e3;
  std::int64_t q_points = 25;

  void add_to(CLI::App* app) {
    app->add_option("--q-grid", q_grid, "Comma-separated Q values (overrides the log grid)");
    app->add_option("--q-min", q_min)->capture_default_str();
    app->add_option("--q-max", q_max)->capture_default_str();
    app->add_option("--q-points", q_points, "Log-spaced grid size")->capture_default_str();
    base.add_common(app);
  }

  std::vector<double> grid() const {
    if (!q_grid.empty()) return parse_real_list(q_grid, "--q-grid");
    if (!(q_min > 0.0) || !(q_max >= q_min) || q_points < 1) throw std::invalid_argument("invalid Q grid range");
    std::vector<double> g;
    for (std::int64_t i = 0; i < q_points; ++i) {
      const double t = q_points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(q_points - 1);
      g.push_back(std::pow(10.0, std::log10(q_min) + t * (std::log10(q_max) - std::log10(q_min))));
    }
    return g;
  }

  int run(std::ostream& os) const {
    const std::vector<double> g = grid();
    const QOptimum opt = optimize_q(base.resolve(), g);
    CsvWriter csv(base.out);
    csv.row({"q", "objective", "suspension_prob", "feasibility_prob", "mean_delta_r"});
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& s = opt.summaries[i];
      csv.row({format_real(g[i]), format_real(opt.objective[i]), format_real(s.suspension_prob),
               format_real(s.feasibility_prob), format_real(s.mean_delta_r)});
    }
    csv.close();
    print_table(os, {{"q_star", format_real(opt.best)}});
    Manifest m("optimize-q");
    m.add("q-grid", join(g));
    base.record_common(m);
    finish_file(m, base.out, os);
    return kExitOk;
  }
};

struct Lob {
  int antennas = 4;
  double theta_bob_deg = 0.0;
  double theta_eve_deg = 20.0;
  double loc_err_deg = 0.0;
  double k_bob = 10.0;
  double k_eve = 10.0;
  double power = 1.0;
  double an_fraction = 0.0;
  double noise_b = 0.1;
  double noise_e = 0.1;
  Simulation sim;
  std::string out;

  void add_common(CLI::App* app) {
    app->add_option("--antennas", antennas, "Transmit array size")->capture_default_str();
    app->add_option("--theta-bob-deg", theta_bob_deg, "Bob's direction, degrees")->capture_default_str();
    app->add_option("--theta-eve-deg", theta_eve_deg, "Eve's direction, degrees")->capture_default_str();
    app->add_option("--loc-err-deg", loc_err_deg, "Std of the angle estimate error, degrees")->capture_default_str();
    app->add_option("--k-bob", k_bob, "Rician K-factor towards Bob ('inf' = pure LOS)")->capture_default_str();
    app->add_option("--k-eve", k_eve, "Rician K-factor towards Eve")->capture_default_str();
    app->add_option("--power", power, "Total transmit power")->capture_default_str();
    app->add_option("--noise-b", noise_b, "Noise power at Bob")->capture_default_str();
    app->add_option("--noise-e", noise_e, "Noise power at Eve")->capture_default_str();
    sim.add_to(app);
    app->add_option("--out", out, "CSV output path")->required();
  }
  void add_to(CLI::App* app) {
    app->add_option("--an-fraction", an_fraction, "Power share for artificial noise")->capture_default_str();
    add_common(app);
  }

  LobConfig resolve() const {
    LobConfig c;
    c.n_antennas = antennas;
    c.theta_bob = theta_bob_deg * kDegree;
    c.theta_eve = theta_eve_deg * kDegree;
    c.location_error_std = loc_err_deg * kDegree;
    c.k_factor_bob = k_bob;
    c.k_factor_eve = k_eve;
    c.total_power = power;
    c.an_fraction = an_fraction;
    c.noise_power_bob = noise_b;
    c.noise_power_eve = noise_e;
    c.blocklength = sim.n;
    c.constraints = sim.constraints.resolve();
    c.trials = sim.trials;
    c.seed = RngSeed{sim.seed, 1};
    c.approximation = sim.approx.resolve();
    c.threads = sim.threads;
    c.validate();
    return c;
  }
  void record_common(Manifest& m) const {
    m.add("antennas", static_cast<std::int64_t>(antennas));
    m.add("theta-bob-deg", theta_bob_deg);
    m.add("theta-eve-deg", theta_eve_deg);
    m.add("loc-err-deg", loc_err_deg);
    m.add("k-bob", k_bob);
    m.add("k-eve", k_eve);
    m.add("power", power);
    m.add("noise-b", noise_b);
    m.add("noise-e", noise_e);
    sim.record(m);
    m.add("out", out);
  }

  int run(std::ostream& os) const {
    const LobResult r = run_lob(resolve());
    CsvWriter csv(out);
    csv.row({"trial_id", "theta_hat_deg", "sinr_b_db", "sinr_e_db", "r_sup", "r_inf", "delta_r", "feasible"});
    for (const auto& rec : r.records) {
      csv.row({std::to_string(rec.trial_id), format_real(rec.theta_hat / kDegree), format_real(linear_to_db(rec.sinr.bob.sinr)),
               format_real(linear_to_db(rec.sinr.eve.sinr)), format_real(rec.assessment.r_sup.value()),
               format_real(rec.assessment.r_inf.value()), format_real(rec.assessment.delta_r),
               format_bool(rec.assessment.feasible)});
    }
    csv.close();
    const LobSummary& s = r.summary;
    print_table(os, {{"trials", std::to_string(s.trials)},
                     {"mean_sinr_bob", format_real(s.mean_sinr_bob)},
                     {"mean_sinr_eve", format_real(s.mean_sinr_eve)},
                     {"feasibility_prob", format_real(s.feasibility_prob)},
                     {"mean_delta_r", format_real(s.mean_delta_r)}});
    Manifest m("lob");
    m.add("an-fraction", an_fraction);
    record_common(m);
    finish_file(m, out, os);
    return kExitOk;
  }
};

struct OptimizeAn {
  Lob base;
  std::string phi_grid = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";

  void add_to(CLI::App* app) {
    app->add_option("--phi-grid", phi_grid, "Comma-separated AN fractions in [0, 1)")->capture_default_str();
    base.add_common(app);
  }

  int run(std::ostream& os) const {
    const std::vector<double> g = parse_real_list(phi_grid, "--phi-grid");
    const AnOptimum opt = optimize_an_fraction(base.resolve(), g);
    CsvWriter csv(base.out);
    csv.row({"phi", "objective", "feasibility_prob", "mean_sinr_bob", "mean_sinr_eve", "mean_delta_r"});
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& s = opt.summaries[i];
      csv.row({format_real(g[i]), format_real(opt.objective[i]), format_real(s.feasibility_prob),
               format_real(s.mean_sinr_bob), format_real(s.mean_sinr_eve), format_real(s.mean_delta_r)});
    }
    csv.close();
    print_table(os, {{"phi_star", format_real(opt.best)}});
    Manifest m("optimize-an");
    m.add("phi-grid", join(g));
    base.record_common(m);
    finish_file(m, base.out, os);
    return kExitOk;
  }
};

// ---------------------------------------------------------------------------

std::optional<std::string> find_flag_value(const std::vector<std::string>& args, const std::string& flag) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == flag && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind(flag + "=", 0) == 0) return args[i].substr(flag.size() + 1);
  }
  return std::nullopt;
}

// Expands `--config file` into `--key value` pairs placed before the explicit
// arguments, so flags given on the command line win.
std::vector<std::string> expand_config(const std::vector<std::string>& args, CLI::App& app) {
  if (args.size() < 2) return args;
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args[1]);
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  const auto path = find_flag_value(args, "--config");
  if (!path) return args;
  const auto entries = parse_kv_file(*path);
  std::vector<std::string> out{args[0], args[1]};
  for (const auto& e : entries) {
    if (Manifest::is_meta_key(e.key)) continue;
    if (e.key == "config") throw ConfigError(*path, e.line, "nested config files are not supported");
    if (sub->get_option_no_throw("--" + e.key) == nullptr) {
      throw ConfigError(*path, e.line, "unknown key '" + e.key + "' for command '" + args[1] + "'");
    }
    out.push_back("--" + e.key);
    out.push_back(e.value);
  }
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-blocklength physical layer security toolkit", "urllc-pls"};
  app.require_subcommand(1);
  app.set_version_flag("--version", URLLC_PLS_VERSION);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Fig2 fig2;
  Fig3 fig3;
  Gap gap;
  BerGap ber_gap;
  Interval interval;
  MinBlock minblock;
  Cipc cipc;
  Lob lob;
  OptimizeQ optimize_q_cmd;
  OptimizeAn optimize_an_cmd;
  std::string replay_manifest;
  std::string replay_out;

  std::map<CLI::App*, std::function<int()>> handlers;
  std::string config_path;
  auto add = [&](const char* name, const char* help, auto& cmd) {
    CLI::App* sub = app.add_subcommand(name, help);
    cmd.add_to(sub);
    sub->add_option("--config", config_path, "key = value file supplying defaults for this command");
    handlers[sub] = [&cmd, &out] { return cmd.run(out); };
  };
  add("fig2", "Error probability vs coding rate for several blocklengths", fig2);
  add("fig3", "Rate bounds R_b^eps, R_e^eps and rate interval vs blocklength", fig3);
  add("gap", "Security gap from the error-probability thresholds", gap);
  add("ber-gap", "Security gap from post-decoding BER thresholds of a t-error-correcting code", ber_gap);
  add("interval", "Rate interval and feasibility at one blocklength", interval);
  add("minblock", "Smallest blocklength meeting both constraints", minblock);
  add("cipc", "Monte Carlo run of channel-inversion power control", cipc);
  add("lob", "Monte Carlo run of location-based beamforming with artificial noise", lob);
  add("optimize-q", "Grid search of the CIPC received-power target Q", optimize_q_cmd);
  add("optimize-an", "Grid search of the artificial-noise power fraction", optimize_an_cmd);
  CLI::App* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", replay_manifest, "Manifest file")->required();
  replay->add_option("--out", replay_out, "Override the output path");

  try {
    std::vector<std::string> args = expand_config(raw_args, app);
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitInvalidArguments;
    }

    if (replay->parsed()) {
      const auto entries = parse_kv_file(replay_manifest);
      const KvEntry* command = find_entry(entries, "command");
      if (command == nullptr) throw ConfigError(replay_manifest, 0, "manifest has no 'command' entry");
      std::vector<std::string> again{raw_args.empty() ? "urllc-pls" : raw_args[0], command->value, "--config",
                                     replay_manifest};
      if (!replay_out.empty()) {
        again.push_back("--out");
        again.push_back(replay_out);
      }
      return run(again, out, err);
    }
    for (auto& [sub, handler] : handlers) {
      if (sub->parsed()) return handler();
    }
    err << "no command given\n";
    return kExitInvalidArguments;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitInvalidArguments;
  } catch (const UnsatisfiableError& e) {
    err << "unsatisfiable (" << to_string(e.side()) << " constraint): " << e.what() << '\n';
    return kExitUnsatisfiable;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIoFailure;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIoFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitInvalidArguments;
  } catch (const std::domain_error& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitInvalidArguments;
  }
}

}  // namespace urllc::cli
