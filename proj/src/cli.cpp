#include "epsexp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "epsexp/oracle.hpp"

namespace epsexp {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

} // namespace

LinearParam parse_param(const std::string& raw, Backend backend, mpfr_prec_t precision) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    if (text.empty()) throw parse_error("cannot parse parameter '" + raw + "': empty");

    struct Term {
        int sign;
        std::string body;
    };
    std::vector<Term> terms;
    size_t i = 0;
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        }
        size_t start = i;
        while (i < text.size()) {
            char c = text[i];
            if (c == '+' || c == '-') {
                // keep a sign that is part of a decimal exponent: digit|'.'
                // then e|E then sign then digit
                bool exp_sign = i >= 2 && (text[i - 1] == 'e' || text[i - 1] == 'E') &&
                                (is_digit(text[i - 2]) || text[i - 2] == '.') &&
                                i + 1 < text.size() && is_digit(text[i + 1]);
                if (!exp_sign) break;
            }
            ++i;
        }
        std::string body = text.substr(start, i - start);
        if (body.empty()) throw parse_error("cannot parse parameter '" + raw + "'");
        terms.push_back({sign, body});
    }

    Scalar constant = Scalar::from_long(0, backend, precision);
    Scalar slope = constant;
    for (const auto& t : terms) {
        bool is_eps = false;
        std::string coeff = t.body;
        if (t.body == "eps") {
            is_eps = true;
            coeff = "1";
        } else if (t.body.size() > 3 && t.body.compare(t.body.size() - 3, 3, "eps") == 0) {
            is_eps = true;
            coeff = t.body.substr(0, t.body.size() - 3);
            if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
            if (coeff.empty()) throw parse_error("cannot parse parameter '" + raw + "'");
        }
        Scalar v;
        try {
            v = Scalar::from_literal(coeff, backend, precision);
        } catch (const pi_not_exact&) {
            throw;
        } catch (const parse_error&) {
            throw parse_error("cannot parse parameter '" + raw + "': bad term '" + t.body + "'");
        }
        if (t.sign < 0) v = -v;
        if (is_eps)
            slope += v;
        else
            constant += v;
    }
    return {constant, slope};
}

namespace {

struct CliOptions {
    std::string kind = "pfq";
    std::string upper_csv;
    std::string lower_csv;
    std::string z_text;
    std::string x1_text;
    std::string x2_text;
    int order = -1;
    std::string backend_text = "exact";
    long precision = 256;
    std::string trunc_text = "auto";
    std::string tol_text = "1e-16";
    int m_cap = 8192;
    std::string format = "text";
    int digits = 15;
    bool oracle_check = false;
    bool formal = false;
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

int error_exit_code(const std::exception& e) {
    if (dynamic_cast<const divergent_series*>(&e)) return 2;
    if (dynamic_cast<const truncation_not_converged*>(&e)) return 2;
    if (dynamic_cast<const division_by_zero*>(&e)) return 2;
    if (dynamic_cast<const pole_at_beta*>(&e)) return 2;
    return 1;
}

void apply_config_file(const std::string& path, CliOptions& opt) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config file '" + path + "'");
    nlohmann::json cfg;
    try {
        in >> cfg;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw parse_error("config file '" + path + "' must hold a JSON object");
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        std::string key = it.key();
        for (char& c : key)
            if (c == '-') c = '_';
        const auto& v = it.value();
        auto str = [&]() -> std::string {
            if (!v.is_string())
                throw parse_error("config key '" + it.key() + "' must be a string");
            return v.get<std::string>();
        };
        auto integer = [&]() -> long {
            if (!v.is_number_integer())
                throw parse_error("config key '" + it.key() + "' must be an integer");
            return v.get<long>();
        };
        auto flag = [&]() -> bool {
            if (!v.is_boolean())
                throw parse_error("config key '" + it.key() + "' must be a boolean");
            return v.get<bool>();
        };
        if (key == "kind") opt.kind = str();
        else if (key == "upper") opt.upper_csv = str();
        else if (key == "lower") opt.lower_csv = str();
        else if (key == "z") opt.z_text = str();
        else if (key == "x1") opt.x1_text = str();
        else if (key == "x2") opt.x2_text = str();
        else if (key == "order") opt.order = static_cast<int>(integer());
        else if (key == "backend") opt.backend_text = str();
        else if (key == "precision") opt.precision = integer();
        else if (key == "trunc") opt.trunc_text = v.is_number_integer() ? std::to_string(integer()) : str();
        else if (key == "tol") opt.tol_text = str();
        else if (key == "m_cap") opt.m_cap = static_cast<int>(integer());
        else if (key == "format") opt.format = str();
        else if (key == "digits") opt.digits = static_cast<int>(integer());
        else if (key == "oracle_check") opt.oracle_check = flag();
        else if (key == "formal") opt.formal = flag();
        else throw parse_error("unknown config key '" + it.key() + "'");
    }
}

Backend parse_backend(const std::string& s) {
    if (s == "exact") return Backend::Exact;
    if (s == "float") return Backend::Float;
    if (s == "complex") return Backend::Complex;
    throw parse_error("unknown backend '" + s + "' (expected exact, float, or complex)");
}

/// Rendered forms of one coefficient.
struct Rendered {
    int order;
    std::optional<std::string> exact;
    std::string decimal;                    // real part
    std::optional<std::string> imag_decimal;
    std::string text; // what the text format shows
};

Rendered render_coefficient(int order, const Scalar& c, int digits) {
    Rendered r;
    r.order = order;
    switch (c.backend()) {
        case Backend::Exact: {
            r.exact = c.exact_string();
            r.decimal = c.rational().decimal_string(digits);
            auto minimal = c.rational().exact_decimal_string(digits);
            r.text = minimal ? *minimal : r.decimal;
            break;
        }
        case Backend::Float:
            r.decimal = c.floating().decimal_string(digits);
            r.text = r.decimal;
            break;
        case Backend::Complex:
            r.decimal = c.complex_value().real().decimal_string(digits);
            r.imag_decimal = c.complex_value().imag().decimal_string(digits);
            r.text = c.complex_value().decimal_string(digits);
            break;
    }
    return r;
}

struct Verification {
    std::optional<double> fd_min_digits;
    int fd_orders = 0;
    std::optional<std::string> remainder_ratio;
    std::optional<std::string> note;
};

Scalar scalar_in_backend(const Rational& q, Backend b) {
    switch (b) {
        case Backend::Exact: return Scalar(q);
        case Backend::Float: return Scalar(BigFloat(q));
        case Backend::Complex: return Scalar(ComplexFloat(q));
    }
    throw bad_request("unknown backend");
}

Scalar to_comparable_float(const Scalar& s) {
    if (s.backend() == Backend::Exact) return Scalar(BigFloat(s.rational()));
    return s;
}

Scalar laurent_sum_at(const LaurentSeries& series, const Scalar& eps) {
    Scalar acc = Scalar::from_long(0, eps.backend());
    for (int n = series.min_order; n <= series.max_order(); ++n)
        acc += series.at(n) * eps.pow_int(n);
    return acc;
}

/// F4 double sum at a concrete eps, truncated at m1 + m2 <= M.
Scalar appell_direct_value(const Appell4Request& req, const Scalar& eps, int M) {
    Backend b = req.backend;
    Scalar a1 = req.upper[0].constant + req.upper[0].slope * eps;
    Scalar a2 = req.upper[1].constant + req.upper[1].slope * eps;
    Scalar b1 = req.lower[0].constant + req.lower[0].slope * eps;
    Scalar b2 = req.lower[1].constant + req.lower[1].slope * eps;
    Scalar acc = Scalar::from_long(0, b);
    for (int s = 0; s <= M; ++s) {
        Scalar ps1 = pochhammer(a1, s);
        Scalar ps2 = pochhammer(a2, s);
        for (int m1 = 0; m1 <= s; ++m1) {
            int m2 = s - m1;
            Scalar num = ps1 * ps2 * req.x1.pow_int(m1) * req.x2.pow_int(m2);
            Scalar den = pochhammer(b1, m1) * pochhammer(b2, m2) *
                         scalar_in_backend(Rational(mpz_class(factorial_z(m1) * factorial_z(m2))), b);
            acc += num / den;
        }
    }
    return acc;
}

template <class DirectFn>
std::optional<std::string> remainder_ratio(const LaurentSeries& series, Backend b,
                                           DirectFn&& direct) {
    try {
        Scalar eps_large = scalar_in_backend(Rational(1, 64), b);
        Scalar eps_small = scalar_in_backend(Rational(1, 128), b);
        Scalar r_large = direct(eps_large) - laurent_sum_at(series, eps_large);
        Scalar r_small = direct(eps_small) - laurent_sum_at(series, eps_small);
        BigFloat m_large = b == Backend::Exact ? BigFloat(r_large.rational()).abs()
                           : b == Backend::Float ? r_large.floating().abs()
                                                 : r_large.complex_value().abs();
        BigFloat m_small = b == Backend::Exact ? BigFloat(r_small.rational()).abs()
                           : b == Backend::Float ? r_small.floating().abs()
                                                 : r_small.complex_value().abs();
        if (m_small.is_zero()) return std::string("exact");
        return (m_large / m_small).decimal_string(4);
    } catch (const error&) {
        return std::nullopt; // pole or loss at the probe eps: nothing to report
    }
}

Verification verify_pfq(const ExpansionRequest& req, const ExpansionOutcome& outcome) {
    Verification v;
    bool singular = false;
    for (const auto& c : classify_lower(req.lower))
        if (c.kind == LowerKind::Singular) singular = true;
    if (!singular && req.n_max >= 0) {
        OracleConfig cfg;
        cfg.M = std::max(1, outcome.m_used);
        cfg.precision = std::max<mpfr_prec_t>(256, req.precision);
        ExpansionRequest probe = req;
        probe.n_max = std::min(req.n_max, 3);
        std::vector<Scalar> fd = finite_difference_coeffs(probe, cfg);
        double worst = 1e9;
        for (int n = 0; n <= probe.n_max; ++n) {
            double d = digits_agreement(fd[static_cast<size_t>(n)],
                                        to_comparable_float(outcome.series.at(n)));
            worst = std::min(worst, d);
        }
        v.fd_min_digits = worst;
        v.fd_orders = probe.n_max + 1;
    } else if (singular) {
        v.note = "finite-difference check skipped (singular lower parameters)";
    }
    v.remainder_ratio = remainder_ratio(outcome.series, req.backend, [&](const Scalar& eps) {
        return direct_series_value(req.upper, req.lower, req.z, eps, outcome.m_used);
    });
    return v;
}

Verification verify_appell(const Appell4Request& req, const ExpansionOutcome& outcome) {
    Verification v;
    v.remainder_ratio = remainder_ratio(outcome.series, req.backend, [&](const Scalar& eps) {
        return appell_direct_value(req, eps, outcome.m_used);
    });
    return v;
}

void emit_text(std::ostream& out, const std::vector<Rendered>& rows, const Verification* ver) {
    size_t label_w = 0;
    for (const auto& r : rows)
        label_w = std::max(label_w, 4 + std::to_string(r.order).size());
    for (const auto& r : rows) {
        std::string label = "eps^" + std::to_string(r.order);
        out << label << std::string(label_w - label.size() + 2, ' ') << r.text << "\n";
    }
    if (ver) {
        out << "\n";
        if (ver->fd_min_digits)
            out << "oracle: finite-difference agreement over " << ver->fd_orders
                << " leading orders: >= " << *ver->fd_min_digits << " digits\n";
        if (ver->note) out << "oracle: " << *ver->note << "\n";
        if (ver->remainder_ratio)
            out << "oracle: remainder shrink factor from eps = 1/64 to 1/128: "
                << *ver->remainder_ratio << "\n";
        else
            out << "oracle: remainder check skipped\n";
    }
}

void emit_csv(std::ostream& out, const std::vector<Rendered>& rows, bool complex_backend,
              const Verification* ver) {
    out << (complex_backend ? "order,decimal,imag_decimal" : "order,decimal") << "\n";
    for (const auto& r : rows) {
        out << r.order << "," << r.decimal;
        if (complex_backend) out << "," << (r.imag_decimal ? *r.imag_decimal : "");
        out << "\n";
    }
    if (ver) {
        if (ver->fd_min_digits)
            out << "# oracle: finite-difference agreement over " << ver->fd_orders
                << " leading orders: >= " << *ver->fd_min_digits << " digits\n";
        if (ver->note) out << "# oracle: " << *ver->note << "\n";
        if (ver->remainder_ratio)
            out << "# oracle: remainder shrink factor from eps = 1/64 to 1/128: "
                << *ver->remainder_ratio << "\n";
    }
}

void emit_json(std::ostream& out, const std::vector<Rendered>& rows, int min_order, int m_used,
               Backend backend, mpfr_prec_t precision, int p, int q, bool coincident,
               const Verification* ver) {
    nlohmann::ordered_json j;
    j["min_order"] = min_order;
    j["coefficients"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json c;
        c["order"] = r.order;
        if (r.exact)
            c["exact"] = *r.exact;
        else
            c["exact"] = nullptr;
        c["decimal"] = r.decimal;
        if (r.imag_decimal)
            c["imag_decimal"] = *r.imag_decimal;
        else
            c["imag_decimal"] = nullptr;
        j["coefficients"].push_back(c);
    }
    nlohmann::ordered_json meta;
    meta["M_used"] = m_used;
    meta["backend"] = backend_name(backend);
    meta["precision_bits"] = backend == Backend::Exact ? 0 : static_cast<long>(precision);
    meta["p"] = p;
    meta["q"] = q;
    if (coincident) meta["coincident_thresholds"] = true;
    j["meta"] = meta;
    if (ver) {
        nlohmann::ordered_json v;
        if (ver->fd_min_digits)
            v["finite_difference_min_digits"] = *ver->fd_min_digits;
        else
            v["finite_difference_min_digits"] = nullptr;
        if (ver->remainder_ratio)
            v["remainder_ratio"] = *ver->remainder_ratio;
        else
            v["remainder_ratio"] = nullptr;
        if (ver->note) v["note"] = *ver->note;
        j["verification"] = v;
    }
    out << j.dump(2) << "\n";
}

int run_parsed(const CliOptions& opt, std::ostream& out) {
    Backend backend = parse_backend(opt.backend_text);
    if (opt.precision < MPFR_PREC_MIN || opt.precision > 1000000)
        throw bad_request("precision out of range");
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(opt.precision);
    if (opt.digits < 1) throw bad_request("--digits must be >= 1");
    if (opt.order < 0) throw parse_error("missing or negative --order");
    if (opt.format != "text" && opt.format != "json" && opt.format != "csv")
        throw parse_error("unknown format '" + opt.format + "'");

    TruncationPolicy pol;
    if (opt.trunc_text == "auto") {
        Scalar tol = Scalar::from_literal(opt.tol_text, backend, prec);
        pol = TruncationPolicy::adaptive(16, tol, opt.m_cap);
    } else {
        bool numeric = !opt.trunc_text.empty();
        for (char c : opt.trunc_text)
            if (!is_digit(c)) numeric = false;
        if (!numeric) throw parse_error("--trunc expects a nonnegative integer or 'auto'");
        pol = TruncationPolicy::fixed(std::stoi(opt.trunc_text));
    }

    std::vector<LinearParam> upper, lower;
    for (const auto& s : split_csv(opt.upper_csv)) upper.push_back(parse_param(s, backend, prec));
    for (const auto& s : split_csv(opt.lower_csv)) lower.push_back(parse_param(s, backend, prec));

    ExpansionOutcome outcome;
    Verification ver;
    bool want_ver = opt.oracle_check;
    int p = 0, q = 0;

    if (opt.kind == "pfq") {
        if (opt.z_text.empty()) throw parse_error("missing --z");
        ExpansionRequest req;
        req.upper = upper;
        req.lower = lower;
        req.z = Scalar::from_literal(opt.z_text, backend, prec);
        req.n_max = opt.order;
        req.truncation = pol;
        req.backend = backend;
        req.precision = prec;
        req.formal = opt.formal;
        outcome = expand_pfq(req);
        if (want_ver) ver = verify_pfq(req, outcome);
        p = static_cast<int>(req.upper.size());
        q = static_cast<int>(req.lower.size());
    } else if (opt.kind == "appell4") {
        if (opt.x1_text.empty() || opt.x2_text.empty()) throw parse_error("missing --x1 or --x2");
        Appell4Request req;
        req.upper = upper;
        req.lower = lower;
        req.x1 = Scalar::from_literal(opt.x1_text, backend, prec);
        req.x2 = Scalar::from_literal(opt.x2_text, backend, prec);
        req.n_max = opt.order;
        req.truncation = pol;
        req.backend = backend;
        req.precision = prec;
        req.formal = opt.formal;
        outcome = expand_appell_f4(req);
        if (want_ver) ver = verify_appell(req, outcome);
        p = q = 2;
    } else {
        throw parse_error("unknown kind '" + opt.kind + "' (expected pfq or appell4)");
    }

    std::vector<Rendered> rows;
    for (int n = outcome.series.min_order; n <= outcome.series.max_order(); ++n)
        rows.push_back(render_coefficient(n, outcome.series.at(n), opt.digits));

    const Verification* vp = want_ver ? &ver : nullptr;
    if (opt.format == "text") {
        emit_text(out, rows, vp);
    } else if (opt.format == "csv") {
        emit_csv(out, rows, backend == Backend::Complex, vp);
    } else {
        emit_json(out, rows, outcome.series.min_order, outcome.m_used, backend, prec, p, q,
                  outcome.coincident_thresholds, vp);
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliOptions opt;

    // --config is applied first so explicit flags win
    std::vector<std::string> rest;
    for (size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) {
                err << "error: --config needs a file path\n";
                return 1;
            }
            try {
                apply_config_file(args[++i], opt);
            } catch (const std::exception& e) {
                err << "error: " << e.what() << "\n";
                return 1;
            }
        } else if (a.rfind("--config=", 0) == 0) {
            try {
                apply_config_file(a.substr(9), opt);
            } catch (const std::exception& e) {
                err << "error: " << e.what() << "\n";
                return 1;
            }
        } else {
            rest.push_back(a);
        }
    }

    CLI::App app{"Taylor/Laurent expansion in eps of pFq and Appell F4 series"};
    app.add_option("--kind", opt.kind, "pfq or appell4");
    app.add_option("--upper", opt.upper_csv, "comma-separated upper parameters, e.g. '-4*eps,-1/2-eps'");
    app.add_option("--lower", opt.lower_csv, "comma-separated lower parameters");
    app.add_option("--z", opt.z_text, "argument of pFq");
    app.add_option("--x1", opt.x1_text, "first argument of Appell F4");
    app.add_option("--x2", opt.x2_text, "second argument of Appell F4");
    app.add_option("--order", opt.order, "highest eps order to report");
    app.add_option("--backend", opt.backend_text, "exact, float, or complex");
    app.add_option("--precision", opt.precision, "float precision in bits (default 256)");
    app.add_option("--trunc", opt.trunc_text, "truncation order M, or 'auto'");
    app.add_option("--tol", opt.tol_text, "adaptive tolerance (default 1e-16)");
    app.add_option("--m-cap", opt.m_cap, "adaptive truncation cap (default 8192)");
    app.add_option("--format", opt.format, "text, json, or csv");
    app.add_option("--digits", opt.digits, "significant digits to print (default 15)");
    app.add_flag("--oracle-check", opt.oracle_check, "append an independent verification block");
    app.add_flag("--formal", opt.formal, "treat the series formally; skip convergence checks");

    std::vector<std::string> reversed(rest.rbegin(), rest.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        return run_parsed(opt, out);
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return error_exit_code(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace epsexp
