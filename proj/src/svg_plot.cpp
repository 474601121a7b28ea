#include "rsic/svg_plot.hpp"

#include "rsic/types.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace rsic {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

struct Row {
    std::string policy;
    std::int64_t d = 0;
    std::int64_t T = 0;
    std::int64_t mu = 0;
    double ratio = 0.0;
};

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a", "#637939", "#7b4173",
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << v;
    return os.str();
}

} // namespace

std::string plot_bench_csv(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string header;
    if (!std::getline(in, header)) throw ParseError("plot: empty CSV");
    if (!header.empty() && header.back() == '\r') header.pop_back();

    std::vector<std::string> cols = split_csv_line(header);
    auto col = [&](const std::string& name) -> std::size_t {
        auto it = std::find(cols.begin(), cols.end(), name);
        if (it == cols.end()) throw ParseError("plot: CSV missing column: " + name);
        return static_cast<std::size_t>(it - cols.begin());
    };
    std::size_t c_policy = col("policy"), c_d = col("d"), c_T = col("T"), c_mu = col("mu"),
                c_ratio = col("ratio");

    std::vector<Row> rows;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f = split_csv_line(line);
        std::size_t needed = std::max({c_policy, c_d, c_T, c_mu, c_ratio}) + 1;
        if (f.size() < needed)
            throw ParseError("plot: short CSV row at line " + std::to_string(lineno));
        Row r;
        r.policy = f[c_policy];
        try {
            r.d = std::stoll(f[c_d]);
            r.T = std::stoll(f[c_T]);
            r.mu = std::stoll(f[c_mu]);
        } catch (const std::exception&) {
            throw ParseError("plot: non-numeric axis value at line " + std::to_string(lineno));
        }
        try {
            std::size_t pos = 0;
            r.ratio = std::stod(f[c_ratio], &pos);
            if (pos != f[c_ratio].size()) continue;
        } catch (const std::exception&) {
            continue; // error rows carry "n/a"; skip the point
        }
        rows.push_back(std::move(r));
    }

    std::set<std::pair<std::int64_t, std::int64_t>> panels;
    std::set<std::int64_t> mus;
    std::vector<std::string> policies; // first-seen order
    for (const Row& r : rows) {
        panels.insert({r.d, r.T});
        mus.insert(r.mu);
        if (std::find(policies.begin(), policies.end(), r.policy) == policies.end())
            policies.push_back(r.policy);
    }
    if (panels.empty()) panels.insert({0, 0}); // header-only input: one empty panel

    const int plot_w = 360, plot_h = 230;
    const int margin_l = 52, margin_r = 16, margin_t = 34, margin_b = 40;
    const int panel_w = margin_l + plot_w + margin_r;
    const int panel_h = margin_t + plot_h + margin_b;
    const int per_row = 3;
    int n_panels = static_cast<int>(panels.size());
    int rows_of_panels = (n_panels + per_row - 1) / per_row;
    int legend_h = 22 * (static_cast<int>(policies.size()) + 1);
    int width = panel_w * std::min(per_row, n_panels);
    int height = panel_h * rows_of_panels + legend_h;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    std::vector<std::int64_t> mu_axis(mus.begin(), mus.end());
    int panel_idx = 0;
    for (const auto& [pd, pT] : panels) {
        int px = (panel_idx % per_row) * panel_w;
        int py = (panel_idx / per_row) * panel_h;
        ++panel_idx;
        int x0 = px + margin_l, y0 = py + margin_t;

        svg << "<text x=\"" << px + panel_w / 2 << "\" y=\"" << py + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">d=" << pd
            << " T=" << pT << "</text>\n";
        svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << plot_w << "\" height=\""
            << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

        std::vector<Row> here;
        for (const Row& r : rows)
            if (r.d == pd && r.T == pT) here.push_back(r);

        double lo = 1e300, hi = -1e300;
        for (const Row& r : here) {
            lo = std::min(lo, r.ratio);
            hi = std::max(hi, r.ratio);
        }
        if (here.empty()) {
            lo = 1.0;
            hi = 2.0;
        }
        if (hi - lo < 1e-9) {
            lo -= 0.05;
            hi += 0.05;
        }
        double pad = (hi - lo) * 0.08;
        lo -= pad;
        hi += pad;

        auto x_of = [&](std::int64_t mu) {
            auto it = std::find(mu_axis.begin(), mu_axis.end(), mu);
            std::size_t i = static_cast<std::size_t>(it - mu_axis.begin());
            if (mu_axis.size() <= 1) return x0 + plot_w / 2.0;
            return x0 + 14 + (plot_w - 28) * static_cast<double>(i) /
                                 static_cast<double>(mu_axis.size() - 1);
        };
        auto y_of = [&](double v) { return y0 + plot_h - plot_h * (v - lo) / (hi - lo); };

        for (int i = 0; i <= 4; ++i) {
            double v = lo + (hi - lo) * i / 4.0;
            double y = y_of(v);
            svg << "<line x1=\"" << x0 << "\" y1=\"" << y << "\" x2=\"" << x0 + plot_w << "\" y2=\""
                << y << "\" stroke=\"#dddddd\"/>\n";
            svg << "<text x=\"" << x0 - 6 << "\" y=\"" << y + 4
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v)
                << "</text>\n";
        }
        for (std::int64_t mu : mu_axis) {
            double x = x_of(mu);
            svg << "<text x=\"" << x << "\" y=\"" << y0 + plot_h + 16
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << mu
                << "</text>\n";
        }
        svg << "<text x=\"" << x0 + plot_w / 2 << "\" y=\"" << y0 + plot_h + 32
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">mu</text>\n";

        for (std::size_t pi = 0; pi < policies.size(); ++pi) {
            const std::string& name = policies[pi];
            std::map<std::int64_t, double> pts;
            for (const Row& r : here)
                if (r.policy == name) pts[r.mu] = r.ratio;
            if (pts.empty()) continue;
            const char* color = kPalette[pi % (sizeof(kPalette) / sizeof(kPalette[0]))];
            std::ostringstream poly;
            for (const auto& [mu, ratio] : pts) poly << x_of(mu) << ',' << y_of(ratio) << ' ';
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
                << poly.str() << "\"/>\n";
            for (const auto& [mu, ratio] : pts)
                svg << "<circle cx=\"" << x_of(mu) << "\" cy=\"" << y_of(ratio)
                    << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
    }

    int ly = panel_h * rows_of_panels + 16;
    svg << "<text x=\"16\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"12\" font-weight=\"bold\">policies</text>\n";
    for (std::size_t pi = 0; pi < policies.size(); ++pi) {
        int y = ly + 20 * (static_cast<int>(pi) + 1);
        const char* color = kPalette[pi % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<line x1=\"16\" y1=\"" << y - 4 << "\" x2=\"44\" y2=\"" << y - 4 << "\" stroke=\""
            << color << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"50\" y=\"" << y
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << policies[pi] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace rsic
