#include "CLI11.hpp"
#include "json.hpp"

#include "halfflat/corpus.hpp"
#include "halfflat/curves.hpp"
#include "halfflat/cylinders.hpp"
#include "halfflat/errors.hpp"
#include "halfflat/foliation.hpp"
#include "halfflat/kdistance.hpp"
#include "halfflat/parallel.hpp"
#include "halfflat/saddle.hpp"
#include "halfflat/surface.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace halfflat;
using nlohmann::ordered_json;

namespace {

struct NotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) {
    std::ostringstream out;
    out << std::setprecision(12) << x;
    return out.str();
}

/// Rounds to 12 significant digits so every format shows the same value.
double rounded(double x) { return std::stod(num(x)); }

/// Key-value summary plus an optional table, printed as table, csv or json.
struct Doc {
    std::vector<std::pair<std::string, ordered_json>> fields;
    std::vector<std::string> columns;
    std::vector<std::vector<ordered_json>> rows;

    template <class T>
    void put(const std::string& k, const T& v) {
        if constexpr (std::is_floating_point_v<T>)
            fields.emplace_back(k, rounded(v));
        else
            fields.emplace_back(k, ordered_json(v));
    }
};

std::string cell(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return num(v.get<double>());
    return v.dump();
}

std::string csv_cell(const ordered_json& v) {
    const std::string s = cell(v);
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void print(const Doc& d, const std::string& format) {
    if (format == "json") {
        ordered_json j = ordered_json::object();
        for (const auto& [k, v] : d.fields) j[k] = v;
        if (!d.columns.empty()) {
            ordered_json rows = ordered_json::array();
            for (const auto& r : d.rows) {
                ordered_json o = ordered_json::object();
                for (std::size_t i = 0; i < d.columns.size(); ++i) o[d.columns[i]] = r[i];
                rows.push_back(o);
            }
            j["rows"] = rows;
        }
        std::cout << j.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        if (d.columns.empty()) {
            std::cout << "key,value\n";
            for (const auto& [k, v] : d.fields) std::cout << k << ',' << csv_cell(v) << "\n";
            return;
        }
        for (std::size_t i = 0; i < d.columns.size(); ++i) std::cout << (i ? "," : "") << d.columns[i];
        std::cout << "\n";
        for (const auto& r : d.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? "," : "") << csv_cell(r[i]);
            std::cout << "\n";
        }
        return;
    }
    std::size_t w = 0;
    for (const auto& f : d.fields) w = std::max(w, f.first.size());
    for (const auto& [k, v] : d.fields) std::cout << std::left << std::setw(static_cast<int>(w) + 2) << k << cell(v) << "\n";
    if (d.columns.empty()) return;
    std::vector<std::size_t> widths(d.columns.size());
    for (std::size_t i = 0; i < d.columns.size(); ++i) widths[i] = d.columns[i].size();
    for (const auto& r : d.rows)
        for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], cell(r[i]).size());
    if (!d.fields.empty()) std::cout << "\n";
    for (std::size_t i = 0; i < d.columns.size(); ++i)
        std::cout << std::left << std::setw(static_cast<int>(widths[i]) + 2) << d.columns[i];
    std::cout << "\n";
    for (const auto& r : d.rows) {
        for (std::size_t i = 0; i < r.size(); ++i)
            std::cout << std::left << std::setw(static_cast<int>(widths[i]) + 2) << cell(r[i]);
        std::cout << "\n";
    }
}

/// A surface file, or a corpus name: torus, lshape, genus2:a=<p/q>.
HalfTranslationSurface resolve_surface(const std::string& s) {
    if (std::filesystem::is_regular_file(s)) {
        std::ifstream in(s);
        std::stringstream buf;
        buf << in.rdbuf();
        return load_surface(buf.str());
    }
    return corpus(s);
}

Vec2 parse_vec(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("expected x,y but got '" + s + "'");
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

ordered_json word_json(const CurveWord& w) { return w.to_string(); }

void report_fields(Doc& d, const std::string& prefix, const DistanceReport& r) {
    d.put(prefix + "ratio", r.r);
    d.put(prefix + "K", r.K);
    d.put(prefix + "witness", word_json(r.witness));
    d.put(prefix + "witness_ratio", r.witness_ratio);
    d.put(prefix + "candidates", r.candidates);
    d.put(prefix + "status", to_string(r.status));
}

void report_rows(Doc& d, const DistanceReport& r) {
    d.columns = {"word", "length1", "length2", "ratio"};
    for (const CandidateRow& row : r.table)
        d.rows.push_back({row.word.to_string(), rounded(row.length1), rounded(row.length2), rounded(row.ratio)});
}

int run_demo() {
    int failures = 0;
    auto line = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
        failures += !ok;
    };
    const auto l = normalize_area(make_lshape());
    const auto A = LinearDeformation::diagonal(2);
    const DistanceReport ex = k_exact_linear(l, A);
    const DistanceReport lo = ratio_lower_bound(make_linear_pair(l, A), 3 * (1 / std::sqrt(3.0)));
    line(std::abs(ex.K - std::log(2.0)) < 1e-9 && std::abs(lo.K - ex.K) < 1e-9,
         "L-shape diag(2,1/2): K = log 2 = " + num(ex.K) + ", lower bound " + num(lo.K));
    const AsymmetryReport g = asymmetry_report(make_genus2_pair(make_rational(1, 4), make_rational(1, 3)), 2.0);
    const double r = 1 / std::sqrt(2.0), back = (r - 0.25) / (r - 1.0 / 3);
    line(std::abs(g.forward.r - 4.0 / 3) < 1e-9 && std::abs(g.backward.r - back) < 1e-9,
         "genus-2 a=1/4 b=1/3: forward " + num(g.forward.r) + " (4/3), backward " + num(g.backward.r) + " (" +
             num(back) + ")");
    const double self = liouville_self_intersection(make_torus(), 2000);
    line(std::abs(self - std::numbers::pi / 2) < 2e-3, "torus Liouville self-intersection " + num(self) + " (pi/2)");
    const auto t = make_torus();
    const double gap = twist_length_gap(t, CurveWord::parse("+0"), CurveWord::parse("+1"));
    line(std::abs(gap - (2 - std::sqrt(2.0))) < 1e-9, "torus twist gap " + num(gap) + " (2 - sqrt 2)");
    const auto eq = find_equality_case(make_lshape(), 3.0);
    line(eq.has_value(), eq ? "L-shape equality case alpha " + eq->alpha.to_string() + " beta " +
                                  eq->beta.to_string() + " gap " + num(eq->gap)
                            : std::string("L-shape equality case not found"));
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations on half-translation surfaces given as polygon gluings."};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "table";
    int threads = 0;
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--threads", threads, "Worker threads (default: HALFFLAT_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);

    std::string surface, word, alpha, beta, pair, surface2, matrix, direction;
    double L = 0, theta = -1;
    int power = 1, samples = 2000;
    bool normalize = false, self = false, longer = false, exact = false;
    std::vector<std::string> extras;
    const char* surface_help = "Surface file, or torus | lshape | genus2:a=<p/q>";

    auto* validate_cmd = app.add_subcommand("validate", "Validate a surface and report its invariants");
    validate_cmd->add_option("--surface", surface, surface_help)->required();

    auto* area_cmd = app.add_subcommand("area", "Exact area");
    area_cmd->add_option("--surface", surface, surface_help)->required();
    area_cmd->add_flag("--normalize", normalize, "Rescale to unit area first");

    auto* sc_cmd = app.add_subcommand("sc", "Saddle connections up to a length bound");
    sc_cmd->add_option("--surface", surface, surface_help)->required();
    sc_cmd->add_option("--length-bound", L, "Length bound")->required()->check(CLI::PositiveNumber);
    sc_cmd->add_flag("--normalize", normalize, "Rescale to unit area first");

    auto* cyl_cmd = app.add_subcommand("cyl", "Cylinder decomposition in a direction, or cylinder curves up to a length");
    cyl_cmd->add_option("--surface", surface, surface_help)->required();
    auto* dir_opt = cyl_cmd->add_option("--direction", direction, "Direction dx,dy (rationals)");
    auto* len_opt = cyl_cmd->add_option("--length-bound", L, "List cylinder core curves up to this length")
                        ->check(CLI::PositiveNumber);
    dir_opt->excludes(len_opt);
    cyl_cmd->add_flag("--normalize", normalize, "Rescale to unit area first");

    auto* len_cmd = app.add_subcommand("len", "Flat length of a closed curve");
    len_cmd->add_option("--surface", surface, surface_help)->required();
    len_cmd->add_option("--word", word, "Curve word, e.g. +3,-7,+2")->required();
    len_cmd->add_flag("--normalize", normalize, "Rescale to unit area first");

    auto* twist_cmd = app.add_subcommand("twist", "Dehn twist of beta along alpha and the length gap");
    twist_cmd->add_option("--surface", surface, surface_help)->required();
    twist_cmd->add_option("--alpha", alpha, "Simple twisting curve")->required();
    twist_cmd->add_option("--beta", beta, "Twisted curve")->required();
    twist_cmd->add_option("--power", power, "Twist power");

    auto* pair_cmd = app.add_subcommand("pair", "Foliation and Liouville pairings");
    pair_cmd->alias("liouville");
    pair_cmd->add_option("--surface", surface, surface_help)->required();
    pair_cmd->add_option("--word", word, "Curve word");
    pair_cmd->add_option("--theta", theta, "Foliation angle in radians");
    pair_cmd->add_option("--theta-samples", samples, "Riemann sum samples")->check(CLI::PositiveNumber);
    pair_cmd->add_flag("--self", self, "Liouville self-intersection");

    auto* kd_cmd = app.add_subcommand("kdist", "Asymmetric distance between two metrics with the same marking");
    auto* pair_opt = kd_cmd->add_option("--pair", pair, "genus2:a=<p/q>,b=<p/q>");
    auto* s1_opt = kd_cmd->add_option("--surface", surface, surface_help);
    auto* s2_opt = kd_cmd->add_option("--surface2", surface2, "Second metric, same combinatorics");
    auto* m_opt = kd_cmd->add_option("--matrix", matrix, "Second metric as A q, A = a,b,c,d with det 1");
    kd_cmd->add_option("--length-bound", L, "Candidate length bound")->required()->check(CLI::PositiveNumber);
    kd_cmd->add_option("--extra", extras, "Additional simple candidate words");
    kd_cmd->add_flag("--longer", longer, "Only search for a curve longer in the second metric");
    kd_cmd->add_flag("--exact", exact, "With --matrix: exact value log sigma_max");
    pair_opt->excludes(s1_opt)->excludes(s2_opt)->excludes(m_opt);
    s2_opt->excludes(m_opt)->needs(s1_opt);
    m_opt->needs(s1_opt);

    auto* demo_cmd = app.add_subcommand("demo", "Reproduce the worked examples and print pass/fail");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (threads > 0) set_threads(threads);

    try {
        Doc d;
        if (*validate_cmd) {
            const auto s = resolve_surface(surface);
            const ValidationReport v = validate(s);
            d.put("name", s.name());
            d.put("ok", v.ok);
            d.put("genus", v.genus);
            d.put("area", format_rational(v.area));
            ordered_json cones = ordered_json::array();
            for (const ConePoint& c : v.cone_points) cones.push_back(std::to_string(c.multiple) + "pi");
            d.put("cone_angles", v.ok ? cones.dump() : "");
            for (const auto& m : v.diagnostics) d.put("diagnostic", m);
            for (const auto& m : v.warnings) d.put("warning", m);
            print(d, format);
            return v.ok ? 0 : 1;
        }
        if (*area_cmd) {
            auto s = resolve_surface(surface);
            if (normalize) s = normalize_area(s);
            d.put("area", format_rational(area(s)));
            d.put("area_value", area(s).get_d());
        } else if (*sc_cmd) {
            auto s = resolve_surface(surface);
            if (normalize) s = normalize_area(s);
            const auto list = saddle_connections(s, L);
            d.put("count", list.size());
            d.columns = {"len2_num", "len2_den", "dx", "dy", "src", "dst"};
            for (const auto& c : list)
                d.rows.push_back({c.len2.get_num().get_str(), c.len2.get_den().get_str(),
                                  format_rational(c.holonomy.x), format_rational(c.holonomy.y), c.src, c.dst});
        } else if (*cyl_cmd) {
            auto s = resolve_surface(surface);
            if (normalize) s = normalize_area(s);
            if (!direction.empty()) {
                const Direction dir(parse_vec(direction));
                const Decomposition dec = cylinder_decomposition(s, dir, default_cap(s));
                double total = 0;
                for (const auto& c : dec.cylinders) total += c.area();
                d.put("cylinders", dec.cylinders.size());
                d.put("total_area", total);
                d.columns = {"dirx", "diry", "circumference", "height", "word"};
                for (const auto& c : dec.cylinders)
                    d.rows.push_back({format_rational(c.direction.v.x), format_rational(c.direction.v.y),
                                      rounded(c.circumference), rounded(c.height), c.core.to_string()});
            } else if (L > 0) {
                const auto list = cylinder_curves_up_to(s, L);
                d.put("count", list.size());
                d.columns = {"dirx", "diry", "length", "word"};
                for (const auto& c : list)
                    d.rows.push_back({format_rational(c.direction.v.x), format_rational(c.direction.v.y),
                                      rounded(c.length), c.word.to_string()});
            } else {
                throw CLI::ValidationError("cyl needs --direction or --length-bound");
            }
        } else if (*len_cmd) {
            auto s = resolve_surface(surface);
            if (normalize) s = normalize_area(s);
            const FlatGeodesic g = tighten(s, CurveWord::parse(word));
            d.put("length", g.length);
            d.put("cylinder", g.cylinder);
            d.put("cone_visits", g.visits.size());
            d.put("geodesic_word", g.word(s.complex()).reduced().to_string());
            d.columns = {"segment", "length", "theta"};
            for (std::size_t i = 0; i < g.segments.size(); ++i)
                d.rows.push_back({i, rounded(g.segments[i].length), rounded(g.segments[i].theta)});
        } else if (*twist_cmd) {
            const auto s = resolve_surface(surface);
            const CurveWord a = CurveWord::parse(alpha), b = CurveWord::parse(beta);
            const CurveWord tb = dehn_twist(s, b, a, power);
            const double la = length(s, a), lb = length(s, b), ltb = length(s, tb);
            const int i = intersection_number(s, a, b);
            d.put("intersection", i);
            d.put("length_alpha", la);
            d.put("length_beta", lb);
            d.put("twisted_word", tb.to_string());
            d.put("length_twisted", ltb);
            d.put("gap", std::abs(power) * i * la - (ltb - lb));
        } else if (*pair_cmd) {
            const auto s = resolve_surface(surface);
            if (self) d.put("liouville_self_intersection", liouville_self_intersection(s, samples));
            if (!word.empty()) {
                const FlatGeodesic g = tighten(s, CurveWord::parse(word));
                d.put("length", g.length);
                d.put("liouville_pairing", liouville_curve_pairing(g, samples));
                if (theta >= 0) d.put("foliation_pairing", foliation_curve_pairing(theta, g));
            }
            if (d.fields.empty()) throw CLI::ValidationError("pair needs --word or --self");
        } else if (*kd_cmd) {
            std::vector<CurveWord> extra;
            for (const auto& w : extras) extra.push_back(CurveWord::parse(w));
            MarkedPair mp;
            std::optional<LinearDeformation> A;
            if (!pair.empty()) {
                mp = parse_pair(pair);
            } else if (!surface.empty() && !surface2.empty()) {
                mp = make_marked_pair(resolve_surface(surface), resolve_surface(surface2));
            } else if (!surface.empty() && !matrix.empty()) {
                std::vector<Rational> e;
                std::stringstream ss(matrix);
                for (std::string item; std::getline(ss, item, ',');) e.push_back(parse_rational(item));
                if (e.size() != 4) throw CLI::ValidationError("--matrix needs four entries");
                A = LinearDeformation(e[0], e[1], e[2], e[3]);
                mp = make_linear_pair(resolve_surface(surface), *A);
            } else {
                throw CLI::ValidationError("kdist needs --pair, --surface with --surface2, or --surface with --matrix");
            }
            if (longer) {
                const auto w = find_longer_curve(mp, L);
                if (!w) {
                    const bool same = mp.q1.polygons() == mp.q2.polygons() && mp.q1.scale2() == mp.q2.scale2();
                    throw NotFound(same ? "identical metrics: no curve is longer in the second one"
                                        : "no candidate up to the length bound is longer in the second metric");
                }
                d.put("word", w->to_string());
                d.put("length1", length(mp.q1, *w));
                d.put("length2", length(mp.q2, *w));
            } else if (exact) {
                if (!A) throw CLI::ValidationError("--exact needs --matrix");
                const DistanceReport r = k_exact_linear(mp.q1, *A, L);
                report_fields(d, "", r);
                report_rows(d, r);
            } else {
                const AsymmetryReport r = asymmetry_report(mp, L, extra);
                report_fields(d, "forward_", r.forward);
                report_fields(d, "backward_", r.backward);
                report_rows(d, r.forward);
            }
        } else if (*demo_cmd) {
            return run_demo();
        }
        print(d, format);
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotFound& e) {
        std::cerr << "NotFound: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
