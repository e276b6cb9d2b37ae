// borcherds-cli: batch front end printing JSON (CSV for eval-xi --grid).

#include <borcherds/borcherds.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

using json = nlohmann::ordered_json;
using namespace borcherds;

namespace {

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::invalid_input:
    case ErrorKind::insufficient_precision:
    case ErrorKind::arithmetic:
        return 2;
    case ErrorKind::convergence:
        return 3;
    case ErrorKind::wall:
    case ErrorKind::degenerate:
        return 4;
    case ErrorKind::internal:
        return 1;
    }
    return 1;
}

std::vector<std::string> split(const std::string &s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep))
        out.push_back(item);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

std::pair<std::string, std::string> pair_arg(const std::string &s, const char *what) {
    const auto parts = split(s);
    require(parts.size() == 2, ErrorKind::invalid_input, std::string(what) + " must be given as a,b");
    return {parts[0], parts[1]};
}

std::int64_t parse_int(const std::string &s, const char *what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        require(used == s.size(), ErrorKind::invalid_input, std::string("malformed integer for ") + what);
        return v;
    } catch (const std::logic_error &) {
        fail(ErrorKind::invalid_input, std::string("malformed integer for ") + what + ": '" + s + "'");
    }
}

Chamber parse_chamber(std::int64_t m, const std::string &s) {
    const auto [lo, hi] = pair_arg(s, "--chamber");
    Chamber w{m, parse_int(lo, "t_lo"), std::nullopt};
    if (hi != "inf")
        w.t_hi = parse_int(hi, "t_hi");
    check_chamber(w);
    return w;
}

json rational_json(const mpq_class &q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

std::string sci_string(double x) {
    if (std::isinf(x))
        return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

int digits_for(unsigned bits) { return static_cast<int>(std::ceil(bits * 0.30102999566398120)); }

std::string real_str(const Real &x, unsigned bits) { return to_decimal(x, digits_for(bits)); }

json complex_json(const Cx &z, unsigned bits) { return json::array({real_str(z.re, bits), real_str(z.im, bits)}); }

json integer_json(const mpz_class &z) {
    if (z.fits_slong_p())
        return z.get_si();
    return z.get_str();
}

json chamber_json(const Chamber &w) {
    json j{{"label", w.label()}, {"t_lo", w.t_lo}};
    j["t_hi"] = w.t_hi ? json(*w.t_hi) : json(nullptr);
    return j;
}

// Weight-0 weakly holomorphic form given by its principal part and constant term.
struct FormSpec {
    std::map<std::int64_t, mpz_class> principal;
    mpz_class c0{0};

    QSeries series(int N) const {
        QSeries f = QSeries::constant(c0, N);
        std::int64_t n_max = 0;
        for (const auto &[m, c] : principal)
            n_max = std::max(n_max, -m);
        if (n_max == 0)
            return f;
        const auto basis = faber_basis(static_cast<int>(n_max), N);
        for (const auto &[m, c] : principal)
            f += basis[static_cast<std::size_t>(-m - 1)] * c;
        return f;
    }
};

FormSpec read_form(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::invalid_input, "cannot open coefficient file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        fail(ErrorKind::invalid_input, std::string("coefficient file is not valid JSON: ") + e.what());
    }
    require(j.is_object(), ErrorKind::invalid_input, "coefficient file must hold a JSON object");
    auto as_mpz = [](const json &v) {
        if (v.is_number_integer())
            return mpz_class(static_cast<long>(v.get<long long>()));
        require(v.is_string(), ErrorKind::invalid_input, "coefficients must be integers or decimal strings");
        mpz_class z;
        require(z.set_str(v.get<std::string>(), 10) == 0, ErrorKind::invalid_input, "malformed integer coefficient");
        return z;
    };
    FormSpec f;
    if (j.contains("constant"))
        f.c0 = as_mpz(j["constant"]);
    if (j.contains("principal")) {
        require(j["principal"].is_array(), ErrorKind::invalid_input, "principal must be an array of [m, c]");
        for (const auto &entry : j["principal"]) {
            require(entry.is_array() && entry.size() == 2 && entry[0].is_number_integer(), ErrorKind::invalid_input,
                    "principal entries must be [m, c]");
            const std::int64_t m = entry[0].get<std::int64_t>();
            require(m < 0 && m >= -200, ErrorKind::invalid_input, "principal exponents must satisfy -200 <= m < 0");
            f.principal[m] += as_mpz(entry[1]);
        }
    }
    return f;
}

struct Output {
    std::string path;

    void write(const std::string &text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        require(out.good(), ErrorKind::invalid_input, "cannot write '" + path + "'");
        out << text;
    }
    void write(const json &j) const { write(j.dump(2) + "\n"); }
};

unsigned default_precision() {
    if (const char *env = std::getenv("BORCHERDS_PREC")) {
        const std::int64_t p = parse_int(env, "BORCHERDS_PREC");
        require(p >= 64 && p <= 100000, ErrorKind::invalid_input, "BORCHERDS_PREC must lie in [64, 100000]");
        return static_cast<unsigned>(p);
    }
    return 128;
}

void check_prec(unsigned bits) {
    require(bits >= 64 && bits <= 100000, ErrorKind::invalid_input, "--prec must lie in [64, 100000]");
}

json error_json(const std::string &kind, const std::string &message, int code) {
    return {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Explicit Borcherds lifts for U(1,1): field data, Weyl vectors, Heegner points, products"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write output to FILE instead of stdout");

    unsigned prec = 128;
    std::string env_error;
    try {
        prec = default_precision();
    } catch (const Error &e) {
        env_error = e.what();
    }

    // field-info
    auto *field_info = app.add_subcommand("field-info", "discriminant, zeta and |delta| of Q(sqrt d)");
    std::int64_t d = 0;
    field_info->add_option("--d", d, "square-free d < 0")->required();
    field_info->add_option("--prec", prec, "precision in bits");

    // jn-coeffs
    auto *jn = app.add_subcommand("jn-coeffs", "coefficients c(m) of j_n for -n <= m <= M");
    std::int64_t n = 0, upto = 0;
    jn->add_option("--n", n, "n >= 1")->required();
    jn->add_option("--upto", upto, "largest exponent M")->required();

    // chambers
    auto *ch = app.add_subcommand("chambers", "Weyl chambers of index m");
    std::int64_t m = 0;
    std::optional<std::int64_t> ch_d;
    ch->add_option("--m", m, "m < 0")->required();
    ch->add_option("--d", ch_d, "field, for strip bounds in H");
    ch->add_option("--prec", prec, "precision in bits");

    // weyl-vector
    auto *wv = app.add_subcommand("weyl-vector", "Weyl vector of j_n, or of a form f at a point Y");
    std::string chamber_arg, f_path, y_arg;
    wv->add_option("--n", n, "n >= 1");
    wv->add_option("--chamber", chamber_arg, "t_lo,t_hi (t_hi may be inf)");
    wv->add_option("--f", f_path, "coefficient file (JSON)");
    wv->add_option("--Y", y_arg, "y1,y2 as decimals");

    // phi-k
    auto *pk = app.add_subcommand("phi-k", "wall-crossing function and its chamber form");
    pk->add_option("--m", m, "m < 0")->required();
    pk->add_option("--Y", y_arg, "y1,y2 as decimals")->required();
    pk->add_option("--prec", prec, "precision in bits");

    // heegner
    auto *hg = app.add_subcommand("heegner", "Heegner points of norm m");
    std::int64_t bound = 0;
    bool reduced = false;
    hg->add_option("--m", m, "m < 0")->required();
    hg->add_option("--d", d, "square-free d < 0")->required();
    hg->add_option("--bound", bound, "coordinate box bound")->required();
    hg->add_flag("--reduced", reduced, "one reduced representative per SL2(Z) class");
    hg->add_option("--prec", prec, "precision in bits");

    // eval-xi
    auto *ev = app.add_subcommand("eval-xi", "evaluate a Borcherds product");
    std::string tau_arg, grid_arg;
    int max_kl = 60;
    bool theorem_region = false;
    ev->add_option("--d", d, "square-free d < 0")->required();
    ev->add_option("--n", n, "n >= 1 for j_n, 0 for the constant function 1");
    ev->add_option("--f", f_path, "coefficient file (JSON); needs --Y");
    ev->add_option("--Y", y_arg, "y1,y2 selecting the chamber for --f");
    ev->add_option("--tau", tau_arg, "re,im as decimals");
    ev->add_option("--chamber", chamber_arg, "t_lo,t_hi (default: chamber of tau)");
    ev->add_option("--max-kl", max_kl, "include factors with |kl| <= M");
    ev->add_option("--prec", prec, "precision in bits");
    ev->add_flag("--theorem-region", theorem_region, "allow |delta| Im tau > 2n instead of Im tau > 2n");
    ev->add_option("--grid", grid_arg, "re0,re1,nre,im0,im1,nim: CSV of log|Xi| on a grid");

    // check
    auto *chk = app.add_subcommand("check", "run a named invariant suite");
    std::string suite;
    chk->add_option("--suite", suite, "field|lattice|qexp|weyl|heegner|borcherds|all")->required();
    chk->add_option("--prec", prec, "precision in bits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cout << error_json("invalid_input", e.what(), 2).dump(2) << "\n";
        return 2;
    }

    const Output out{out_path};
    try {
        require(env_error.empty(), ErrorKind::invalid_input, env_error);
        check_prec(prec);
        PrecisionGuard guard(prec);

        if (*field_info) {
            const auto s = make_field(d);
            out.write(json{{"d", s.d},
                           {"D_F", s.disc},
                           {"zeta", complex_json(zeta_value(s), prec)},
                           {"abs_delta", real_str(abs_delta(s), prec)},
                           {"prec_bits", prec}});
        } else if (*jn) {
            require(n >= 1 && n <= 200, ErrorKind::invalid_input, "--n must lie in [1, 200]");
            require(upto >= 0 && upto <= 5000, ErrorKind::invalid_input, "--upto must lie in [0, 5000]");
            const QSeries f = faber_jn(static_cast<int>(n), static_cast<int>(upto) + 1);
            json arr = json::array();
            for (std::int64_t k = -n; k <= upto; ++k)
                arr.push_back(json::array({k, f.coeff(static_cast<int>(k)).get_str()}));
            out.write(arr);
        } else if (*ch) {
            std::optional<FieldSpec> spec;
            if (ch_d)
                spec = make_field(*ch_d);
            const auto list = chambers(m);
            json arr = json::array();
            for (const auto &w : list) {
                json j = chamber_json(w);
                j["slope_lo"] = rational_json(w.ratio_lo());
                j["slope_hi"] = w.ratio_hi() ? rational_json(*w.ratio_hi()) : json(nullptr);
                if (spec) {
                    const Real h = abs_delta(*spec) / 2;
                    j["strip_lo"] = real_str(h * to_real(w.ratio_lo()), prec);
                    j["strip_hi"] = w.ratio_hi() ? json(real_str(h * to_real(*w.ratio_hi()), prec)) : json(nullptr);
                }
                arr.push_back(j);
            }
            json walls = json::array();
            for (std::int64_t t : divisors(-m))
                walls.push_back({{"t", t}, {"slope", rational_json(mpq_class(t * t) / mpq_class(-m))}});
            json res{{"m", m}, {"count", list.size()}, {"chambers", arr}, {"walls", walls}};
            if (spec) {
                res["d"] = spec->d;
                res["prec_bits"] = prec;
            }
            out.write(res);
        } else if (*wv) {
            WeylVector rho;
            json res;
            if (!f_path.empty()) {
                require(!y_arg.empty(), ErrorKind::invalid_input, "--f needs --Y");
                const auto [a, b] = pair_arg(y_arg, "--Y");
                const mpq_class y1 = parse_decimal(a), y2 = parse_decimal(b);
                require(y1 > 0 && y2 > 0, ErrorKind::invalid_input, "Y must lie in the positive quadrant");
                const FormSpec f = read_form(f_path);
                rho = weyl_vector_f(f.principal, f.c0, y1, y2);
                res["Y"] = json::array({rational_json(y1), rational_json(y2)});
            } else {
                require(n >= 1, ErrorKind::invalid_input, "--n >= 1 (or --f) is required");
                require(!chamber_arg.empty(), ErrorKind::invalid_input, "--chamber is required with --n");
                const Chamber w = parse_chamber(-n, chamber_arg);
                rho = weyl_vector_jn(n, w);
                res["n"] = n;
                res["chamber"] = chamber_json(w);
            }
            res["rho1"] = rational_json(rho.rho1);
            res["rho2"] = rational_json(rho.rho2);
            out.write(res);
        } else if (*pk) {
            const auto [a, b] = pair_arg(y_arg, "--Y");
            const mpq_class y1 = parse_decimal(a), y2 = parse_decimal(b);
            require(y1 > 0 && y2 > 0, ErrorKind::invalid_input, "Y must lie in the positive quadrant");
            const ChamberLocation loc = chamber_of_Y(m, y1, y2);
            Chamber w;
            bool on_wall = false;
            if (const Wall *wall = std::get_if<Wall>(&loc)) {
                // closure of the chamber just below the wall
                on_wall = true;
                for (const auto &c : chambers(m))
                    if (c.t_hi && *c.t_hi == wall->t)
                        w = c;
            } else {
                w = std::get<Chamber>(loc);
            }
            const Real Y1 = to_real(y1), Y2 = to_real(y2);
            const Real raw = phi_K<Real>(m, Y1, Y2);
            const Real lin = phi_K_chamber<Real>(w, Y1, Y2, 0.0);
            const Real identity = weyl_identity_value<Real>(Y1, Y2, weyl_vector_Fm(m, w));
            out.write(json{{"m", m},
                           {"chamber", chamber_json(w)},
                           {"on_wall", on_wall},
                           {"raw", real_str(raw, prec)},
                           {"chamber_formula", real_str(lin, prec)},
                           {"identity_residual", real_str(raw - identity, prec)},
                           {"prec_bits", prec}});
        } else if (*hg) {
            const auto s = make_field(d);
            const auto e = enumerate_heegner(s, m, bound);
            std::vector<HeegnerPoint> points;
            std::map<std::array<mpz_class, 3>, std::size_t> class_size;
            if (reduced) {
                std::map<std::array<mpz_class, 3>, HeegnerPoint> reps;
                for (const auto &h : e.points) {
                    const auto r = reduce_point(h);
                    ++class_size[r.primitive_form()];
                    reps.emplace(r.primitive_form(), r);
                }
                for (const auto &[form, h] : reps)
                    points.push_back(h);
            } else {
                points = e.points;
            }
            json arr = json::array();
            for (const auto &h : points) {
                const auto l = h.lambda_coords();
                json j{{"lambda", json::array({integer_json(l[0]), integer_json(l[1]), integer_json(l[2]),
                                               integer_json(l[3])})},
                       {"tau", complex_json(h.tau_value(), prec)},
                       {"minpoly", json::array({integer_json(h.A), integer_json(h.B), integer_json(h.C)})},
                       {"q", integer_json(h.q)},
                       {"conductor", integer_json(h.conductor)},
                       {"discriminant", integer_json(h.discriminant())}};
                if (reduced)
                    j["class_size"] = class_size[h.primitive_form()];
                arr.push_back(j);
            }
            out.write(json{{"m", m},
                           {"d", d},
                           {"bound", bound},
                           {"raw_count", e.raw_count},
                           {"count", e.points.size()},
                           {"reduced", reduced},
                           {"prec_bits", prec},
                           {"points", arr}});
        } else if (*ev) {
            const auto s = make_field(d);
            ProductParams p;
            p.max_kl = max_kl;
            p.prec_bits = prec;
            p.region = theorem_region ? ConvergenceRegion::theorem : ConvergenceRegion::conservative;

            std::optional<BorcherdsProduct> product;
            std::string label;
            auto chamber_for_tau = [&](const mpq_class &im) {
                if (!chamber_arg.empty())
                    return parse_chamber(-n, chamber_arg);
                const ChamberLocation loc = chamber_of_tau(-n, im, s);
                if (const Wall *wall = std::get_if<Wall>(&loc))
                    fail(ErrorKind::wall, "tau lies on the wall t=" + std::to_string(wall->t) +
                                              "; pass --chamber to pick an expansion");
                return std::get<Chamber>(loc);
            };
            if (!f_path.empty()) {
                require(!y_arg.empty(), ErrorKind::invalid_input, "--f needs --Y");
                const auto [a, b] = pair_arg(y_arg, "--Y");
                const FormSpec f = read_form(f_path);
                product = BorcherdsProduct::for_f(s, f.series(max_kl + 1), parse_decimal(a), parse_decimal(b), p);
                label = product->chamber_label();
            }
            require(n >= 0, ErrorKind::invalid_input, "--n must be >= 0");

            auto evaluate = [&](const mpq_class &re, const mpq_class &im) -> EvalResult {
                const Cx tau(to_real(re), to_real(im));
                if (product)
                    return product->evaluate(tau);
                if (n == 0)
                    return xi_const(tau, s, p);
                return xi_jn(tau, s, n, chamber_for_tau(im), p);
            };

            if (!grid_arg.empty()) {
                const auto g = split(grid_arg);
                require(g.size() == 6, ErrorKind::invalid_input, "--grid needs re0,re1,nre,im0,im1,nim");
                const mpq_class re0 = parse_decimal(g[0]), re1 = parse_decimal(g[1]);
                const mpq_class im0 = parse_decimal(g[3]), im1 = parse_decimal(g[4]);
                const std::int64_t nre = parse_int(g[2], "nre"), nim = parse_int(g[5], "nim");
                require(nre >= 1 && nim >= 1 && nre * nim <= 1000000, ErrorKind::invalid_input,
                        "grid sizes must be positive (at most 10^6 points)");
                if (!product && n > 0 && !chamber_arg.empty())
                    product = BorcherdsProduct::for_jn(s, n, parse_chamber(-n, chamber_arg), p);
                std::ostringstream csv;
                csv << "re,im,log_abs,tail_bound,status\n";
                for (std::int64_t i = 0; i < nim; ++i)
                    for (std::int64_t k = 0; k < nre; ++k) {
                        const mpq_class re = nre == 1 ? re0 : re0 + (re1 - re0) * mpq_class(k) / mpq_class(nre - 1);
                        const mpq_class im = nim == 1 ? im0 : im0 + (im1 - im0) * mpq_class(i) / mpq_class(nim - 1);
                        csv << to_decimal(to_real(re), 17) << ',' << to_decimal(to_real(im), 17) << ',';
                        try {
                            const auto r = evaluate(re, im);
                            csv << to_decimal(r.log_abs, 17) << ',' << sci_string(r.tail_bound) << ",ok\n";
                        } catch (const Error &e) {
                            csv << "nan,nan," << to_string(e.kind()) << '\n';
                        }
                    }
                out.write(csv.str());
                return 0;
            }

            require(!tau_arg.empty(), ErrorKind::invalid_input, "--tau is required");
            const auto [a, b] = pair_arg(tau_arg, "--tau");
            const mpq_class re = parse_decimal(a), im = parse_decimal(b);
            require(im > 0, ErrorKind::invalid_input, "tau must lie in the upper half-plane");
            json res;
            if (!product && n > 0) {
                const Chamber w = chamber_for_tau(im);
                product = BorcherdsProduct::for_jn(s, n, w, p);
                label = w.label();
            }
            const EvalResult r = product ? product->evaluate(Cx(to_real(re), to_real(im))) : evaluate(re, im);
            res["value"] = complex_json(r.value, prec);
            res["log_abs"] = real_str(r.log_abs, prec);
            res["tail_bound"] = sci_string(r.tail_bound);
            res["factor_count"] = r.factor_count;
            res["weight"] = rational_json(r.weight);
            if (product) {
                res["chamber"] = label;
                res["rho1"] = rational_json(product->weyl_vector().rho1);
                res["rho2"] = rational_json(product->weyl_vector().rho2);
            }
            res["region"] = theorem_region ? "theorem" : "conservative";
            res["max_kl"] = max_kl;
            res["prec_bits"] = prec;
            out.write(res);
        } else if (*chk) {
            const auto results = run_suite(suite, prec);
            bool all = true;
            std::ostringstream lines;
            for (const auto &r : results) {
                all = all && r.pass;
                lines << json{{"suite", r.suite}, {"test", r.name}, {"pass", r.pass}, {"detail", r.detail}}.dump()
                      << '\n';
            }
            out.write(lines.str());
            return all ? 0 : 1;
        }
    } catch (const Error &e) {
        const int code = exit_code(e.kind());
        std::cout << error_json(to_string(e.kind()), e.what(), code).dump(2) << "\n";
        return code;
    } catch (const std::exception &e) {
        std::cout << error_json("internal", e.what(), 1).dump(2) << "\n";
        return 1;
    }
    return 0;
}
