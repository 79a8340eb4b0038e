#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "resonance/sweep.hpp"

namespace resonance {

/// 17 significant digits: enough for the decimal text to round-trip the
/// exact double, so emitters are byte-deterministic.
inline std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::Plus: return "plus";
        case Branch::Minus: return "minus";
        default: return "none";
    }
}

inline Branch branch_from_string(std::string_view s) {
    if (s == "plus") return Branch::Plus;
    if (s == "minus") return Branch::Minus;
    if (s == "none") return Branch::None;
    throw std::invalid_argument("unknown branch label: " + std::string(s));
}

inline constexpr std::string_view csv_header =
    "model,n,branch,K,re_w,im_w,re_k,im_k,re_E,im_E,gamma,residual,"
    "re_w_exact,im_w_exact,rel_error";

inline std::string records_to_csv(const ModelSpec& model, const std::vector<ResonanceRecord>& records) {
    std::ostringstream out;
    out << csv_header << '\n';
    for (const ResonanceRecord& r : records) {
        out << model_name(model) << ',' << r.n << ',' << to_string(r.branch) << ',' << r.order
            << ',' << format_float(r.w.real()) << ',' << format_float(r.w.imag()) << ','
            << format_float(r.k.real()) << ',' << format_float(r.k.imag()) << ','
            << format_float(r.E.real()) << ',' << format_float(r.E.imag()) << ','
            << format_float(r.gamma) << ',' << format_float(r.residual) << ',';
        if (r.w_exact) {
            out << format_float(r.w_exact->real()) << ',' << format_float(r.w_exact->imag());
        } else {
            out << "nan,nan";
        }
        out << ',' << (r.rel_error ? format_float(*r.rel_error) : "nan") << '\n';
    }
    return out.str();
}

inline std::string records_to_json(const ModelSpec& model, const std::vector<ResonanceRecord>& records) {
    std::ostringstream out;
    out << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ResonanceRecord& r = records[i];
        out << "  {\"model\":\"" << model_name(model) << "\",\"n\":" << r.n << ",\"branch\":\""
            << to_string(r.branch) << "\",\"K\":" << r.order << ",\"re_w\":" << format_float(r.w.real())
            << ",\"im_w\":" << format_float(r.w.imag()) << ",\"re_k\":" << format_float(r.k.real())
            << ",\"im_k\":" << format_float(r.k.imag()) << ",\"re_E\":" << format_float(r.E.real())
            << ",\"im_E\":" << format_float(r.E.imag()) << ",\"gamma\":" << format_float(r.gamma)
            << ",\"residual\":" << format_float(r.residual) << ",\"re_w_exact\":"
            << (r.w_exact ? format_float(r.w_exact->real()) : "null") << ",\"im_w_exact\":"
            << (r.w_exact ? format_float(r.w_exact->imag()) : "null") << ",\"rel_error\":"
            << (r.rel_error ? format_float(*r.rel_error) : "null") << '}'
            << (i + 1 < records.size() ? "," : "") << '\n';
    }
    out << "]\n";
    return out.str();
}

inline std::string compare_csv_header(int max_order) {
    std::ostringstream out;
    out << 'n';
    for (int k = 0; k <= max_order; ++k) out << ",rel_error_k" << k;
    out << ",rel_error_z2";
    return out.str();
}

inline std::string compare_to_csv(const CompareReport& report, int max_order) {
    std::ostringstream out;
    out << compare_csv_header(max_order) << '\n';
    for (const CompareRow& row : report.rows) {
        out << row.n;
        for (double e : row.rel_error_by_order) out << ',' << format_float(e);
        out << ',' << format_float(row.z_order2_rel_error) << '\n';
    }
    return out.str();
}

inline std::string compare_to_json(const CompareReport& report) {
    std::ostringstream out;
    out << "[\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const CompareRow& row = report.rows[i];
        out << "  {\"n\":" << row.n << ",\"rel_error_by_order\":[";
        for (std::size_t k = 0; k < row.rel_error_by_order.size(); ++k)
            out << (k ? "," : "") << format_float(row.rel_error_by_order[k]);
        out << "],\"rel_error_z2\":" << format_float(row.z_order2_rel_error) << '}'
            << (i + 1 < report.rows.size() ? "," : "") << '\n';
    }
    out << "]\n";
    return out.str();
}

namespace detail {

inline std::string fmt2(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string fmt_tick(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

/// Scatter of the momentum-plane poles (Re k across, Im k up, so decaying
/// resonances sit below the axis). Circle = plus branch, X = minus branch,
/// dot = branchless. Fixed 800x600 canvas, deterministic output.
inline std::string pole_scatter_svg(const std::vector<ResonanceRecord>& records) {
    if (records.empty()) throw std::invalid_argument("pole scatter: empty record set");

    double re_min = records[0].k.real(), re_max = re_min;
    double im_min = records[0].k.imag(), im_max = im_min;
    for (const ResonanceRecord& r : records) {
        re_min = std::min(re_min, r.k.real());
        re_max = std::max(re_max, r.k.real());
        im_min = std::min(im_min, r.k.imag());
        im_max = std::max(im_max, r.k.imag());
    }
    auto widen = [](double& lo, double& hi) {
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    };
    widen(re_min, re_max);
    widen(im_min, im_max);

    constexpr double width = 800.0, height = 600.0;
    constexpr double ml = 70.0, mr = 25.0, mt = 25.0, mb = 55.0;
    auto x_of = [&](double re) { return ml + (re - re_min) / (re_max - re_min) * (width - ml - mr); };
    auto y_of = [&](double im) { return mt + (im_max - im) / (im_max - im_min) * (height - mt - mb); };

    using detail::fmt2;
    using detail::fmt_tick;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n"
        << "<rect x=\"" << fmt2(ml) << "\" y=\"" << fmt2(mt) << "\" width=\"" << fmt2(width - ml - mr)
        << "\" height=\"" << fmt2(height - mt - mb)
        << "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";

    // zero line of Im k when it is inside the frame
    if (im_min < 0.0 && im_max > 0.0)
        svg << "<line x1=\"" << fmt2(ml) << "\" y1=\"" << fmt2(y_of(0.0)) << "\" x2=\""
            << fmt2(width - mr) << "\" y2=\"" << fmt2(y_of(0.0))
            << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

    svg << "<text x=\"" << fmt2((ml + width - mr) / 2.0) << "\" y=\"" << fmt2(height - 12.0)
        << "\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">Re k</text>\n"
        << "<text x=\"18\" y=\"" << fmt2((mt + height - mb) / 2.0)
        << "\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << fmt2((mt + height - mb) / 2.0) << ")\">Im k</text>\n"
        << "<text x=\"" << fmt2(ml) << "\" y=\"" << fmt2(height - mb + 18.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << fmt_tick(re_min)
        << "</text>\n"
        << "<text x=\"" << fmt2(width - mr) << "\" y=\"" << fmt2(height - mb + 18.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << fmt_tick(re_max)
        << "</text>\n"
        << "<text x=\"" << fmt2(ml - 6.0) << "\" y=\"" << fmt2(mt + 5.0)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << fmt_tick(im_max)
        << "</text>\n"
        << "<text x=\"" << fmt2(ml - 6.0) << "\" y=\"" << fmt2(height - mb)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" << fmt_tick(im_min)
        << "</text>\n";

    bool branched = false;
    for (const ResonanceRecord& r : records) {
        const std::string x = fmt2(x_of(r.k.real()));
        const std::string y = fmt2(y_of(r.k.imag()));
        switch (r.branch) {
            case Branch::Plus:
                branched = true;
                svg << "<circle cx=\"" << x << "\" cy=\"" << y
                    << "\" r=\"5\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>\n";
                break;
            case Branch::Minus: {
                branched = true;
                const double px = x_of(r.k.real());
                const double py = y_of(r.k.imag());
                svg << "<path d=\"M " << fmt2(px - 4.0) << ' ' << fmt2(py - 4.0) << " L "
                    << fmt2(px + 4.0) << ' ' << fmt2(py + 4.0) << " M " << fmt2(px - 4.0) << ' '
                    << fmt2(py + 4.0) << " L " << fmt2(px + 4.0) << ' ' << fmt2(py - 4.0)
                    << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
                break;
            }
            default:
                svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"#333333\"/>\n";
                break;
        }
    }

    if (branched)
        svg << "<text x=\"" << fmt2(width - mr - 6.0) << "\" y=\"" << fmt2(mt + 18.0)
            << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">circle = plus, "
               "cross = minus</text>\n";

    svg << "</svg>\n";
    return svg.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

// ---------------------------------------------------------------------------
// Sweep settings: the flat key=value config surface shared by the config
// file and the command-line flags. Strings stay unparsed until build time so
// both sources go through identical validation.

struct SweepSettings {
    std::string model = "winter";
    double z = -0.1;  // single-barrier coupling; reference value used in the docs
    double z0 = 0.0;
    double zp = 0.0;
    double zm = 0.0;
    std::string n_range = "1..10";
    int order = -1;  // -1: use the subcommand default
    std::string branches;  // "plus,minus" subset; empty = all the model has
    std::string outputs = "csv";
    std::string path = ".";
    double tolerance = 1e-12;
    int max_iterations = 50;
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string_view::npos) return {};
    const auto to = s.find_last_not_of(" \t\r");
    return std::string(s.substr(from, to - from + 1));
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace detail

inline double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not a number: '" + text + "'");
    }
    if (used != text.size()) throw std::invalid_argument(what + ": not a number: '" + text + "'");
    return v;
}

inline int parse_int(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not an integer: '" + text + "'");
    }
    if (used != text.size()) throw std::invalid_argument(what + ": not an integer: '" + text + "'");
    return v;
}

/// "5" or "1..10".
inline std::pair<int, int> parse_n_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int n = parse_int(detail::trim(text), "n range");
        return {n, n};
    }
    const int lo = parse_int(detail::trim(text.substr(0, dots)), "n range");
    const int hi = parse_int(detail::trim(text.substr(dots + 2)), "n range");
    return {lo, hi};
}

inline std::vector<OutputKind> parse_outputs(const std::string& text) {
    std::vector<OutputKind> out;
    for (const std::string& item : detail::split(text, ',')) {
        if (item.empty()) continue;
        if (item == "csv") out.push_back(OutputKind::Csv);
        else if (item == "json") out.push_back(OutputKind::Json);
        else if (item == "svg") out.push_back(OutputKind::Svg);
        else throw std::invalid_argument("unknown output format: '" + item + "'");
    }
    return out;
}

inline std::vector<Branch> parse_branch_list(const std::string& text) {
    std::vector<Branch> out;
    for (const std::string& item : detail::split(text, ','))
        if (!item.empty()) out.push_back(branch_from_string(item));
    return out;
}

/// One `key = value` per line, '#' comments, later keys win.
inline std::map<std::string, std::string> parse_flat_config(std::istream& in) {
    std::map<std::string, std::string> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected 'key = value'");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        entries[key] = value;
    }
    return entries;
}

inline void apply_config_entry(SweepSettings& s, const std::string& key, const std::string& value) {
    if (key == "model") s.model = value;
    else if (key == "z") s.z = parse_double(value, "z");
    else if (key == "z0") s.z0 = parse_double(value, "z0");
    else if (key == "zp") s.zp = parse_double(value, "zp");
    else if (key == "zm") s.zm = parse_double(value, "zm");
    else if (key == "n") s.n_range = value;
    else if (key == "order") s.order = parse_int(value, "order");
    else if (key == "branches") s.branches = value;
    else if (key == "out") s.outputs = value;
    else if (key == "path") s.path = value;
    else if (key == "tol") s.tolerance = parse_double(value, "tol");
    else if (key == "max-iter" || key == "max_iter") s.max_iterations = parse_int(value, "max-iter");
    else throw std::invalid_argument("unknown config key: '" + key + "'");
}

inline void apply_config_file(SweepSettings& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    for (const auto& [key, value] : parse_flat_config(in)) apply_config_entry(s, key, value);
}

/// Turn parsed settings into a runnable sweep. `default_order` fills in the
/// order when neither the config file nor the flags set one.
inline SweepConfig build_sweep_config(const SweepSettings& s, int default_order) {
    SweepConfig cfg;
    if (s.model == "winter") cfg.model = WinterModel{Complex{s.z, 0.0}};
    else if (s.model == "double") cfg.model = DoubleDeltaModel{Complex{s.z0, 0.0}, Complex{s.zp, 0.0}};
    else if (s.model == "triple")
        cfg.model = TripleDeltaModel{Complex{s.zm, 0.0}, Complex{s.z0, 0.0}, Complex{s.zp, 0.0}};
    else throw std::invalid_argument("unknown model: '" + s.model + "' (winter, double, triple)");

    std::tie(cfg.n_min, cfg.n_max) = parse_n_range(s.n_range);
    // an unset order falls back to the subcommand default, capped at what the
    // model's shift tower provides; an explicit order is taken as requested
    cfg.order = s.order < 0 ? std::min(default_order, max_expansion_order(cfg.model)) : s.order;
    cfg.branches = parse_branch_list(s.branches);
    cfg.outputs = parse_outputs(s.outputs);
    cfg.output_path = s.path;
    cfg.newton.tolerance = s.tolerance;
    cfg.newton.max_iterations = s.max_iterations;
    validate(cfg);
    return cfg;
}

}  // namespace resonance
