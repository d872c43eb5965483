#include "ftmi/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ftmi/capacity.hpp"
#include "ftmi/errors.hpp"
#include "ftmi/grid_mi.hpp"
#include "ftmi/mercer.hpp"

namespace ftmi {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& section, const std::string& key,
                    const std::string& raw) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(raw, &pos);
    } catch (const std::exception&) {
        throw ConfigError("[" + section + "] " + key + ": not a number: '" + raw + "'");
    }
    if (pos != raw.size() || !std::isfinite(v))
        throw ConfigError("[" + section + "] " + key + ": not a finite number: '" + raw + "'");
    return v;
}

std::vector<double> parse_list(const std::string& section, const std::string& key,
                               const std::string& raw) {
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ConfigError("[" + section + "] " + key + ": empty list element");
        out.push_back(parse_number(section, key, item));
    }
    if (out.empty())
        throw ConfigError("[" + section + "] " + key + ": empty list");
    return out;
}

using Section = std::map<std::string, std::string>;

KernelSpec kernel_from_section(const std::string& name, const Section& sec) {
    auto get = [&](const char* key) -> double {
        auto it = sec.find(key);
        if (it == sec.end())
            throw ConfigError("[" + name + "]: missing key '" + key + "'");
        return parse_number(name, key, it->second);
    };
    auto it = sec.find("kind");
    if (it == sec.end()) throw ConfigError("[" + name + "]: missing key 'kind'");
    const std::string kind = it->second;

    auto check_keys = [&](std::initializer_list<const char*> allowed) {
        for (const auto& [key, value] : sec) {
            if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
                    return key == a;
                }) == allowed.end())
                throw ConfigError("[" + name + "]: unknown key '" + key +
                                  "' for kind=" + kind);
        }
    };

    if (kind == "sinc") {
        check_keys({"kind", "P", "W"});
        return KernelSpec::sinc_bandlimited(get("P"), get("W"));
    }
    if (kind == "exponential") {
        check_keys({"kind", "P", "alpha"});
        return KernelSpec::exponential_ou(get("P"), get("alpha"));
    }
    throw ConfigError("[" + name + "]: unknown kernel kind '" + kind + "'");
}

NoiseSpec noise_from_section(const Section& sec) {
    auto it = sec.find("kind");
    if (it == sec.end()) throw ConfigError("[noise]: missing key 'kind'");
    if (it->second == "awgn") {
        for (const auto& [key, value] : sec)
            if (key != "kind" && key != "n0")
                throw ConfigError("[noise]: unknown key '" + key + "' for kind=awgn");
        auto n0 = sec.find("n0");
        if (n0 == sec.end()) throw ConfigError("[noise]: missing key 'n0'");
        return NoiseSpec::awgn(parse_number("noise", "n0", n0->second));
    }
    return NoiseSpec::colored(kernel_from_section("noise", sec));
}

} // namespace

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
    std::map<std::string, Section> sections;
    std::string line, current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current != "signal" && current != "noise" && current != "window" &&
                current != "compute")
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" +
                                  current + "]");
            if (sections.count(current))
                throw ConfigError("line " + std::to_string(lineno) + ": duplicate section [" +
                                  current + "]");
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || current.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (!sections[current].emplace(key, value).second)
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }

    if (!sections.count("signal")) throw ConfigError("missing [signal] section");
    if (!sections.count("noise")) throw ConfigError("missing [noise] section");
    if (!sections.count("window")) throw ConfigError("missing [window] section");

    ExperimentConfig cfg;
    cfg.signal = kernel_from_section("signal", sections["signal"]);
    cfg.noise = noise_from_section(sections["noise"]);

    for (const auto& [key, value] : sections["window"]) {
        if (key == "T") cfg.T_list = {parse_number("window", "T", value)};
        else if (key == "T_list") cfg.T_list = parse_list("window", "T_list", value);
        else throw ConfigError("[window]: unknown key '" + key + "'");
    }
    if (sections["window"].count("T") && sections["window"].count("T_list"))
        throw ConfigError("[window]: give either T or T_list, not both");
    if (cfg.T_list.empty()) throw ConfigError("[window]: missing T or T_list");
    for (double T : cfg.T_list)
        if (T <= 0.0) throw ConfigError("[window] T: must be positive");

    if (sections.count("compute")) {
        for (const auto& [key, value] : sections["compute"]) {
            if (key == "n") {
                cfg.n = static_cast<int>(parse_number("compute", key, value));
                if (*cfg.n < 1) throw ConfigError("[compute] n: must be >= 1");
            } else if (key == "n_list") {
                for (double v : parse_list("compute", key, value)) {
                    if (v < 1 || v != std::floor(v))
                        throw ConfigError("[compute] n_list: entries must be positive integers");
                    cfg.n_list.push_back(static_cast<int>(v));
                }
            } else if (key == "K") {
                cfg.K = static_cast<int>(parse_number("compute", key, value));
                if (*cfg.K < 1) throw ConfigError("[compute] K: must be >= 1");
            } else if (key == "P_list") {
                cfg.P_list = parse_list("compute", key, value);
                for (double p : cfg.P_list)
                    if (p < 0.0) throw ConfigError("[compute] P_list: powers must be >= 0");
            } else if (key == "tol") {
                cfg.tol = parse_number("compute", key, value);
                if (cfg.tol <= 0.0) throw ConfigError("[compute] tol: must be positive");
            } else if (key == "units") {
                if (value == "nats") cfg.units = Units::Nats;
                else if (value == "bits") cfg.units = Units::Bits;
                else throw ConfigError("[compute] units: expected nats or bits");
            } else if (key == "mode") {
                if (value == "analytic") cfg.spectrum = SpectrumRequest::Analytic;
                else if (value == "nystrom") cfg.spectrum = SpectrumRequest::Nystrom;
                else throw ConfigError("[compute] mode: expected analytic or nystrom");
            } else if (key == "expect_verified") {
                if (value == "true") cfg.expect_verified = true;
                else if (value == "false") cfg.expect_verified = false;
                else throw ConfigError("[compute] expect_verified: expected true or false");
            } else {
                throw ConfigError("[compute]: unknown key '" + key + "'");
            }
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    return parse(in);
}

namespace {

// C_av for the configured pair, closed form when available.
double config_avg_capacity(const ExperimentConfig& cfg) {
    if (cfg.signal.kind == KernelKind::ExponentialOU && cfg.noise.is_awgn)
        return avg_capacity_closed(cfg.signal.power, cfg.signal.decay, cfg.noise.n0);
    return avg_capacity_quadrature(cfg.signal, cfg.noise, cfg.tol);
}

const char* unit_name(Units u) { return u == Units::Nats ? "nats" : "bits"; }

double in_units(double nats, Units u) {
    return u == Units::Nats ? nats : nats / std::numbers::ln2;
}

} // namespace

void run_discrete_mi(const ExperimentConfig& cfg, std::ostream& out) {
    std::vector<int> ns = cfg.n_list;
    if (ns.empty() && cfg.n) ns = {*cfg.n};
    if (ns.empty()) throw ConfigError("discrete-mi needs [compute] n or n_list");

    const double c_av = config_avg_capacity(cfg);

    out << "T,n,I_nats,C_nats_per_s,C_bits_per_s,C_av_nats_per_s\n";
    for (double T : cfg.T_list) {
        for (const auto& [n, rep] : mi_convergence_sweep(cfg.signal, cfg.noise, T, ns)) {
            out << csv_number(T) << ',' << n << ',' << csv_number(rep.value_nats) << ','
                << csv_number(rep.rate_nats_per_s) << ','
                << csv_number(rep.rate_nats_per_s / std::numbers::ln2) << ','
                << csv_number(c_av) << '\n';
        }
    }
}

void run_mercer(const ExperimentConfig& cfg, std::ostream& out) {
    const double T = cfg.T_list.front();

    if (cfg.spectrum == SpectrumRequest::Nystrom) {
        const int n = cfg.n.value_or(800);
        const MercerSpectrum s = nystrom_spectrum(cfg.signal, T, n);
        out << "k,lambda_k\n";
        for (const auto& p : s.pairs)
            out << p.k << ',' << csv_number(p.lambda) << '\n';
        return;
    }

    if (cfg.signal.kind != KernelKind::ExponentialOU)
        throw ConfigError("analytic mercer mode requires an exponential signal kernel "
                          "(use mode = nystrom otherwise)");
    const double alpha = cfg.signal.decay;
    const int K = cfg.K.value_or(4);
    const MercerSpectrum s = exponential_spectrum(cfg.signal.power, alpha, T, K);

    out << "k,omega_k,lambda_k,bracket_lo,bracket_hi,residual\n";
    for (const auto& p : s.pairs) {
        const double lo = (p.k - 1) * std::numbers::pi / T;
        const double hi = p.k * std::numbers::pi / T;
        out << p.k << ',' << csv_number(p.omega) << ',' << csv_number(p.lambda) << ','
            << csv_number(lo) << ',' << csv_number(hi) << ','
            << csv_number(omega_residual(alpha, T, p.k, p.omega)) << '\n';
    }
}

void run_finite_mi(const ExperimentConfig& cfg, std::ostream& out) {
    if (!cfg.noise.is_awgn)
        throw ConfigError("finite-mi requires AWGN noise (the series formula assumes it)");

    const char* u = unit_name(cfg.units);
    out << "T,terms,I_" << u << ",C_" << u << "_per_s,tail_bound_" << u << "\n";
    for (double T : cfg.T_list) {
        MercerSpectrum s =
            (cfg.signal.kind == KernelKind::ExponentialOU &&
             cfg.spectrum == SpectrumRequest::Analytic)
                ? exponential_spectrum(cfg.signal.power, cfg.signal.decay, T,
                                       cfg.K ? *cfg.K : default_truncation(cfg.signal.decay, T))
                : nystrom_spectrum(cfg.signal, T, cfg.n.value_or(800));
        const MIReport rep = finite_time_mi(s, cfg.noise.n0);
        out << csv_number(T) << ',' << rep.terms << ','
            << csv_number(in_units(rep.value_nats, cfg.units)) << ','
            << csv_number(in_units(rep.rate_nats_per_s, cfg.units)) << ','
            << csv_number(in_units(rep.tail_bound_nats, cfg.units)) << '\n';
    }
}

void run_avg_capacity(const ExperimentConfig& cfg, std::ostream& out) {
    const char* u = unit_name(cfg.units);
    out << "method,C_av_" << u << "_per_s\n";
    out << "quadrature," << csv_number(in_units(
        avg_capacity_quadrature(cfg.signal, cfg.noise, cfg.tol), cfg.units)) << '\n';
    if (cfg.signal.kind == KernelKind::ExponentialOU && cfg.noise.is_awgn)
        out << "closed-form," << csv_number(in_units(
            avg_capacity_closed(cfg.signal.power, cfg.signal.decay, cfg.noise.n0),
            cfg.units)) << '\n';
}

bool run_exceed_average(const ExperimentConfig& cfg, std::ostream& out) {
    if (cfg.signal.kind != KernelKind::ExponentialOU)
        throw ConfigError("exceed-average requires an exponential signal kernel");
    if (!cfg.noise.is_awgn) throw ConfigError("exceed-average requires AWGN noise");

    std::vector<double> powers = cfg.P_list;
    if (powers.empty()) powers = {cfg.signal.power};

    bool ok = true;
    out << "T,P,I_T_nats,T_times_Cav_nats,margin_nats,delta,within_delta,verified\n";
    for (double P : powers) {
        for (double T : cfg.T_list) {
            const ExceedAverageReport r = exceed_average_analysis(
                P, cfg.signal.decay, cfg.noise.n0, T, cfg.K.value_or(0));
            out << csv_number(T) << ',' << csv_number(P) << ','
                << csv_number(r.C_T * T) << ',' << csv_number(r.C_av * T) << ','
                << csv_number((r.C_T - r.C_av) * T) << ',' << csv_number(r.delta) << ','
                << (r.within_delta ? 1 : 0) << ',' << (r.theorem_verified ? 1 : 0) << '\n';
            if (cfg.expect_verified && r.within_delta && !r.theorem_verified) ok = false;
        }
    }
    return ok;
}

bool run_selftest(std::ostream& out) {
    int failures = 0;
    auto check = [&](bool pass, const char* what) {
        out << (pass ? "ok:   " : "FAIL: ") << what << '\n';
        if (!pass) ++failures;
    };

    const KernelSpec ou = KernelSpec::exponential_ou(1.0, 1.0);
    check(std::abs(eval_kernel(ou, 1.5, 0.5) - std::exp(-1.0)) < 1e-15,
          "kernel: exponential R(1) = e^-1");
    check(eval_kernel(ou, 0.3, 0.8) == eval_kernel(ou, 0.8, 0.3), "kernel: symmetry");

    {
        const SamplingGrid g = SamplingGrid::uniform_left_endpoint(1.0, 1);
        const auto kx = build_covariance(ou, g);
        const auto kn = build_covariance(NoiseSpec::awgn(2.0), g);
        const MIReport r = discrete_mi(kx, kn, 1.0);
        check(std::abs(r.value_nats - 0.5 * std::log(1.0 + kx.mat(0, 0) / kn.mat(0, 0))) < 1e-12,
              "grid_mi: scalar channel consistency");
    }
    {
        const NoiseSpec noise = NoiseSpec::colored(ou);
        double prev = -1.0;
        bool monotone = true;
        for (int level = 1; level <= 5; ++level) {
            const SamplingGrid g = SamplingGrid::dyadic_nested(1.0, level);
            const MIReport r = discrete_mi(build_covariance(KernelSpec::sinc_bandlimited(1.0, 5.0), g),
                                           build_covariance(noise, g), 1.0);
            if (r.value_nats < prev - 1e-10) monotone = false;
            prev = r.value_nats;
        }
        check(monotone, "grid_mi: nested-grid monotonicity");
    }
    {
        bool ok = true;
        for (int k = 1; k <= 100; ++k) {
            const double w = solve_omega(1.0, 2.0, k);
            if (std::abs(omega_residual(1.0, 2.0, k, w)) >= 1e-12) ok = false;
        }
        check(ok, "mercer: omega residuals (k <= 100)");
    }
    {
        const MercerSpectrum s = exponential_spectrum(1.0, 1.0, 2.0, 1000);
        const TraceReport t = trace(s);
        check(t.partial_sum >= 0.999 * t.total && t.partial_sum <= t.total,
              "mercer: trace identity (K = 1000)");
        double sq = 0.0;
        for (const auto& p : s.pairs) sq += p.lambda * p.lambda;
        check(std::abs(sq - trace_of_square(1.0, 1.0, 2.0)) < 1e-3,
              "mercer: trace-of-square partial sum");
    }
    {
        const double closed = avg_capacity_closed(1.0, 1.0, 1.0);
        const double quad = avg_capacity_quadrature(ou, NoiseSpec::awgn(1.0));
        check(std::abs(closed - (std::sqrt(5.0) - 1.0) / 2.0) < 1e-12,
              "capacity: closed-form anchor (sqrt(5)-1)/2");
        check(std::abs(closed - quad) < 1e-6, "capacity: closed form vs quadrature");
    }
    {
        const ExceedAverageReport r = exceed_average_analysis(0.2, 1.0, 1.0, 2.0, 0);
        check(r.within_delta && r.theorem_verified, "capacity: exceed-average at P = 0.2");
        const JensenChainReport j = jensen_chain_check(0.2, 1.0, 1.0, 2.0, 0);
        check(j.link1 && j.link2 && j.link3, "capacity: proof-chain links");
        check(std::abs(j.mu_sum - 1.0) < 1e-3, "capacity: mu_k sums to 1");
    }

    out << (failures == 0 ? "selftest: all checks passed\n"
                          : "selftest: " + std::to_string(failures) + " check(s) failed\n");
    return failures == 0;
}

} // namespace ftmi
