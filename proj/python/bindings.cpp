#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "urllc/ber_metrics.hpp"
#include "urllc/channels.hpp"
#include "urllc/cipc_sim.hpp"
#include "urllc/lob_sim.hpp"
#include "urllc/secrecy_metrics.hpp"

namespace py = pybind11;
using namespace urllc;

namespace {

ApproximationConfig approx(bool log_term) { return ApproximationConfig{log_term}; }

ConstraintPair betas(double beta_b, double beta_e) { return ConstraintPair{Probability(beta_b), Probability(beta_e)}; }

py::dict assessment_dict(const SecrecyAssessment& a) {
  py::dict d;
  d["r_sup"] = a.r_sup.value();
  d["r_inf"] = a.r_inf.value();
  d["delta_r"] = a.delta_r;
  d["feasible"] = a.feasible;
  return d;
}

py::dict cipc_summary_dict(const CipcSummary& s) {
  py::dict d;
  d["trials"] = s.trials;
  d["suspended"] = s.suspended;
  d["degenerate"] = s.degenerate;
  d["suspension_prob"] = s.suspension_prob;
  d["feasibility_prob"] = s.feasibility_prob;
  d["mean_delta_r"] = s.mean_delta_r;
  d["mean_gamma_e"] = s.mean_gamma_e;
  d["mean_rx_power_bob"] = s.mean_rx_power_bob;
  d["var_rx_power_bob"] = s.var_rx_power_bob;
  return d;
}

py::dict lob_summary_dict(const LobSummary& s) {
  py::dict d;
  d["trials"] = s.trials;
  d["mean_sinr_bob"] = s.mean_sinr_bob;
  d["mean_sinr_eve"] = s.mean_sinr_eve;
  d["feasibility_prob"] = s.feasibility_prob;
  d["mean_delta_r"] = s.mean_delta_r;
  return d;
}

template <class Record, class Getter>
py::array_t<double> column(const std::vector<Record>& recs, Getter get) {
  py::array_t<double> out(static_cast<py::ssize_t>(recs.size()));
  auto v = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < recs.size(); ++i) v(static_cast<py::ssize_t>(i)) = get(recs[i]);
  return out;
}

template <class Record>
py::array_t<bool> feasible_column(const std::vector<Record>& recs) {
  py::array_t<bool> out(static_cast<py::ssize_t>(recs.size()));
  auto v = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < recs.size(); ++i) v(static_cast<py::ssize_t>(i)) = recs[i].assessment.feasible;
  return out;
}

// Seeds cross the boundary as (master_seed, stream_id) tuples.
template <class Cfg>
void bind_seed(py::class_<Cfg>& cls) {
  cls.def_property(
      "seed", [](const Cfg& c) { return py::make_tuple(c.seed.master_seed, c.seed.stream_id); },
      [](Cfg& c, std::pair<std::uint64_t, std::uint64_t> s) { c.seed = RngSeed{s.first, s.second}; });
  cls.def_property(
      "beta_b", [](const Cfg& c) { return c.constraints.beta_b.value(); },
      [](Cfg& c, double b) { c.constraints.beta_b = Probability(b); });
  cls.def_property(
      "beta_e", [](const Cfg& c) { return c.constraints.beta_e.value(); },
      [](Cfg& c, double b) { c.constraints.beta_e = Probability(b); });
  cls.def_property(
      "log_term", [](const Cfg& c) { return c.approximation.include_log_term; },
      [](Cfg& c, bool on) { c.approximation.include_log_term = on; });
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of urllc_pls";
  m.attr("__version__") = URLLC_PLS_VERSION;

  py::register_exception<UnsatisfiableError>(m, "UnsatisfiableError", PyExc_ValueError);
  // Probability and value-type validation surface as ValueError.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("q_func", [](double x) { return q_func(x).value(); }, py::arg("x"));
  m.def("q_func_inv", [](double p) { return q_func_inv(Probability(p)); }, py::arg("p"));

  m.def("capacity", [](double snr) { return capacity(SnrValue(snr)).value(); }, py::arg("snr"));
  m.def("dispersion", [](double snr) { return dispersion(SnrValue(snr)); }, py::arg("snr"));
  m.def(
      "error_probability",
      [](std::int64_t n, double rate, double snr, bool log_term) {
        return error_probability(Blocklength(n), CodingRate(rate), SnrValue(snr), approx(log_term)).value();
      },
      py::arg("n"), py::arg("rate"), py::arg("snr"), py::arg("log_term") = false,
      "Error probability under the normal approximation; snr is linear.");
  m.def(
      "max_rate",
      [](std::int64_t n, double epsilon, double snr, bool log_term) {
        const RateBound b = max_rate(Blocklength(n), Probability(epsilon), SnrValue(snr), approx(log_term));
        return py::make_tuple(b.rate.value(), b.clamped);
      },
      py::arg("n"), py::arg("epsilon"), py::arg("snr"), py::arg("log_term") = false,
      "Returns (rate, clamped).");

  m.def(
      "r_sup",
      [](std::int64_t n, double beta_b, double snr_b, bool log_term) {
        return r_sup(Blocklength(n), Probability(beta_b), SnrValue(snr_b), approx(log_term)).rate.value();
      },
      py::arg("n"), py::arg("beta_b"), py::arg("snr_b"), py::arg("log_term") = false);
  m.def(
      "r_inf",
      [](std::int64_t n, double beta_e, double snr_e, bool log_term) {
        return r_inf(Blocklength(n), Probability(beta_e), SnrValue(snr_e), approx(log_term)).rate.value();
      },
      py::arg("n"), py::arg("beta_e"), py::arg("snr_e"), py::arg("log_term") = false);
  m.def(
      "rate_interval",
      [](std::int64_t n, double snr_b, double snr_e, double beta_b, double beta_e, bool log_term) {
        return assessment_dict(
            rate_interval(Blocklength(n), SnrValue(snr_b), SnrValue(snr_e), betas(beta_b, beta_e), approx(log_term)));
      },
      py::arg("n"), py::arg("snr_b"), py::arg("snr_e"), py::arg("beta_b") = 1e-6, py::arg("beta_e") = 0.5,
      py::arg("log_term") = false);
  m.def(
      "security_gap",
      [](std::int64_t n, double rate, double beta_b, double beta_e, bool log_term) {
        const SecurityGap g =
            security_gap(Blocklength(n), CodingRate(rate), betas(beta_b, beta_e), approx(log_term));
        py::dict d;
        d["snr_b_min"] = g.snr_b_min.linear();
        d["snr_e_max"] = g.snr_e_max.linear();
        d["gap_linear"] = g.gap_linear;
        d["gap_db"] = g.gap_db;
        return d;
      },
      py::arg("n"), py::arg("rate"), py::arg("beta_b") = 1e-6, py::arg("beta_e") = 0.5, py::arg("log_term") = false);
  m.def(
      "min_blocklength",
      [](double snr_b, double snr_e, double beta_b, double beta_e, bool log_term, std::int64_t n_max) {
        return min_blocklength(SnrValue(snr_b), SnrValue(snr_e), betas(beta_b, beta_e), approx(log_term), n_max);
      },
      py::arg("snr_b"), py::arg("snr_e"), py::arg("beta_b") = 1e-6, py::arg("beta_e") = 0.5,
      py::arg("log_term") = false, py::arg("n_max") = 100000, "Smallest feasible n, or None.");

  m.def("bsc_crossover", [](double snr) { return bsc_crossover(SnrValue(snr)).value(); }, py::arg("snr"));
  m.def(
      "block_error_prob",
      [](std::int64_t n_bits, std::int64_t t, double p) {
        return block_error_prob(CodeSpec{n_bits, t}, Probability(p)).value();
      },
      py::arg("n_bits"), py::arg("t"), py::arg("p"));
  m.def(
      "post_decoding_ber",
      [](std::int64_t n_bits, std::int64_t t, double p) {
        return post_decoding_ber(CodeSpec{n_bits, t}, Probability(p)).value();
      },
      py::arg("n_bits"), py::arg("t"), py::arg("p"));
  m.def(
      "ber_security_gap",
      [](std::int64_t n_bits, std::int64_t t, double ber_max_b, double ber_min_e) {
        const BerSecurityGap g =
            ber_security_gap(CodeSpec{n_bits, t}, BerThresholds{Probability(ber_max_b), Probability(ber_min_e)});
        py::dict d;
        d["snr_b_min"] = g.snr_b_min.linear();
        d["snr_e_max"] = g.snr_e_max.linear();
        d["gap_db"] = g.gap_db;
        d["snr_e_at_bracket_edge"] = g.snr_e_at_bracket_edge;
        return d;
      },
      py::arg("n_bits"), py::arg("t"), py::arg("ber_max_b") = 1e-5, py::arg("ber_min_e") = 0.49);

  m.def("steering_vector", &steering_vector, py::arg("aoa_radians"), py::arg("n_antennas"));
  m.def(
      "sample_rayleigh",
      [](int n_antennas, std::uint64_t seed, std::uint64_t stream) {
        return sample_rayleigh(n_antennas, RngSeed{seed, stream});
      },
      py::arg("n_antennas"), py::arg("seed") = 0, py::arg("stream") = 0);

  py::enum_<TruncationPolicy>(m, "Truncation")
      .value("SUSPEND", TruncationPolicy::kSuspend)
      .value("CLAMP", TruncationPolicy::kClamp);

  py::class_<CipcConfig> cipc(m, "CipcConfig");
  cipc.def(py::init<>())
      .def_readwrite("q_target", &CipcConfig::q_target)
      .def_readwrite("p_max", &CipcConfig::p_max)
      .def_readwrite("n_antennas_tx", &CipcConfig::n_antennas_tx)
      .def_readwrite("noise_power_bob", &CipcConfig::noise_power_bob)
      .def_readwrite("noise_power_eve", &CipcConfig::noise_power_eve)
      .def_readwrite("blocklength", &CipcConfig::blocklength)
      .def_readwrite("trials", &CipcConfig::trials)
      .def_readwrite("truncation", &CipcConfig::truncation)
      .def_readwrite("threads", &CipcConfig::threads)
      .def_property(
          "sigma_delta", [](const CipcConfig& c) { return c.reciprocity.sigma_delta; },
          [](CipcConfig& c, double s) { c.reciprocity.sigma_delta = s; })
      .def("validate", &CipcConfig::validate);
  bind_seed(cipc);

  py::class_<LobConfig> lob(m, "LobConfig");
  lob.def(py::init<>())
      .def_readwrite("n_antennas", &LobConfig::n_antennas)
      .def_readwrite("theta_bob", &LobConfig::theta_bob)
      .def_readwrite("theta_eve", &LobConfig::theta_eve)
      .def_readwrite("location_error_std", &LobConfig::location_error_std)
      .def_readwrite("k_factor_bob", &LobConfig::k_factor_bob)
      .def_readwrite("k_factor_eve", &LobConfig::k_factor_eve)
      .def_readwrite("total_power", &LobConfig::total_power)
      .def_readwrite("an_fraction", &LobConfig::an_fraction)
      .def_readwrite("noise_power_bob", &LobConfig::noise_power_bob)
      .def_readwrite("noise_power_eve", &LobConfig::noise_power_eve)
      .def_readwrite("blocklength", &LobConfig::blocklength)
      .def_readwrite("trials", &LobConfig::trials)
      .def_readwrite("threads", &LobConfig::threads)
      .def("validate", &LobConfig::validate);
  bind_seed(lob);

  m.def(
      "run_cipc",
      [](const CipcConfig& cfg) {
        CipcResult r;
        {
          py::gil_scoped_release release;
          r = run_cipc(cfg);
        }
        constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
        py::dict d;
        d["summary"] = cipc_summary_dict(r.summary);
        d["p_t"] = column(r.records, [](const CipcRecord& x) { return x.transmitted() ? *x.p_t : kNan; });
        d["rx_power_bob"] = column(r.records, [](const CipcRecord& x) { return x.transmitted() ? x.rx_power_bob : kNan; });
        d["gamma_b"] = column(r.records, [](const CipcRecord& x) { return x.transmitted() ? x.gamma_b.linear() : kNan; });
        d["gamma_e"] = column(r.records, [](const CipcRecord& x) { return x.transmitted() ? x.gamma_e.linear() : kNan; });
        d["delta_r"] = column(r.records, [](const CipcRecord& x) { return x.transmitted() ? x.assessment.delta_r : kNan; });
        d["feasible"] = feasible_column(r.records);
        return d;
      },
      py::arg("config"), "Per-trial arrays (NaN for suspended trials) plus a summary dict.");

  m.def(
      "run_lob",
      [](const LobConfig& cfg) {
        LobResult r;
        {
          py::gil_scoped_release release;
          r = run_lob(cfg);
        }
        py::dict d;
        d["summary"] = lob_summary_dict(r.summary);
        d["theta_hat"] = column(r.records, [](const LobRecord& x) { return x.theta_hat; });
        d["beam_gain_bob"] = column(r.records, [](const LobRecord& x) { return x.beam_gain_bob; });
        d["sinr_bob"] = column(r.records, [](const LobRecord& x) { return x.sinr.bob.sinr; });
        d["sinr_eve"] = column(r.records, [](const LobRecord& x) { return x.sinr.eve.sinr; });
        d["delta_r"] = column(r.records, [](const LobRecord& x) { return x.assessment.delta_r; });
        d["feasible"] = feasible_column(r.records);
        return d;
      },
      py::arg("config"));

  m.def(
      "optimize_q",
      [](const CipcConfig& cfg, const std::vector<double>& grid) {
        QOptimum opt;
        {
          py::gil_scoped_release release;
          opt = optimize_q(cfg, grid);
        }
        return py::make_tuple(opt.best, opt.objective);
      },
      py::arg("config"), py::arg("q_grid"), "Returns (q_star, objective per grid point).");
  m.def(
      "optimize_an_fraction",
      [](const LobConfig& cfg, const std::vector<double>& grid) {
        AnOptimum opt;
        {
          py::gil_scoped_release release;
          opt = optimize_an_fraction(cfg, grid);
        }
        return py::make_tuple(opt.best, opt.objective);
      },
      py::arg("config"), py::arg("phi_grid"), "Returns (phi_star, objective per grid point).");
}
