#include "warmlex/plot.hpp"

#include <ostream>

#include "warmlex/io_util.hpp"

namespace warmlex {

namespace {

struct Frame {
    double x0, y0, x1, y1;  // plot rectangle in pixels, y grows downward
    double lo, hi;          // data range, shared by both axes

    double px(double v) const { return x0 + (v - lo) / (hi - lo) * (x1 - x0); }
    double py(double v) const { return y1 - (v - lo) / (hi - lo) * (y1 - y0); }
};

void attr(std::string& out, std::string_view name, double value) {
    out += ' ';
    out += name;
    out += "=\"";
    out += format_double(value);
    out += '"';
}

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

// XML comments must not contain "--".
std::string comment_safe(std::string text) {
    std::size_t pos = 0;
    while ((pos = text.find("--", pos)) != std::string::npos) text.replace(pos, 2, "- -");
    return text;
}

std::string metadata_comment(const OutputMetadata& meta) {
    std::string body = "warmlex " + meta.version + "\nconfig_hash=" + meta.config_hash +
                       "\nseed=" + std::to_string(meta.seed) + "\n";
    for (const auto& [name, digest] : meta.inputs) body += "input " + name + "=" + digest + "\n";
    body += "config " + meta.config_echo + "\n";
    return "<!--\n" + comment_safe(std::move(body)) + "-->\n";
}

void emit_rect(std::string& out, std::string_view cls, double x, double y, double w, double h) {
    out += "<rect class=\"";
    out += cls;
    out += '"';
    attr(out, "x", x);
    attr(out, "y", y);
    attr(out, "width", w);
    attr(out, "height", h);
    out += "/>\n";
}

void emit_line(std::string& out, std::string_view cls, double x1, double y1, double x2, double y2) {
    out += "<line class=\"";
    out += cls;
    out += '"';
    attr(out, "x1", x1);
    attr(out, "y1", y1);
    attr(out, "x2", x2);
    attr(out, "y2", y2);
    out += "/>\n";
}

void emit_text(std::string& out, std::string_view cls, double x, double y, std::string_view text,
               std::string_view anchor = "") {
    out += "<text class=\"";
    out += cls;
    out += '"';
    attr(out, "x", x);
    attr(out, "y", y);
    if (!anchor.empty()) {
        out += " text-anchor=\"";
        out += anchor;
        out += '"';
    }
    out += '>';
    out += xml_escape(text);
    out += "</text>\n";
}

void emit_axes(std::string& out, const Frame& f, std::span<const double> ticks,
               std::string_view x_title, std::string_view y_title) {
    out += "<rect class=\"frame\"";
    attr(out, "x", f.x0);
    attr(out, "y", f.y0);
    attr(out, "width", f.x1 - f.x0);
    attr(out, "height", f.y1 - f.y0);
    out += "/>\n";
    for (double t : ticks) {
        const double tx = f.px(t);
        const double ty = f.py(t);
        emit_line(out, "tick", tx, f.y1, tx, f.y1 + 5.0);
        emit_text(out, "tick-label", tx, f.y1 + 18.0, format_double(t), "middle");
        emit_line(out, "tick", f.x0 - 5.0, ty, f.x0, ty);
        emit_text(out, "tick-label", f.x0 - 8.0, ty + 4.0, format_double(t), "end");
    }
    emit_text(out, "axis-title", (f.x0 + f.x1) / 2.0, f.y1 + 38.0, x_title, "middle");
    out += "<text class=\"axis-title\"";
    attr(out, "x", f.x0 - 46.0);
    attr(out, "y", (f.y0 + f.y1) / 2.0);
    out += " text-anchor=\"middle\" transform=\"rotate(-90 ";
    out += format_double(f.x0 - 46.0);
    out += ' ';
    out += format_double((f.y0 + f.y1) / 2.0);
    out += ")\">";
    out += xml_escape(y_title);
    out += "</text>\n";
}

}  // namespace

std::string render_wc_scatter_svg(const WcScatterData& data, const OutputMetadata& meta) {
    const Frame f{70.0, 30.0, 690.0, 480.0, -1.0, 1.0};
    std::string out =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"540\" "
        "viewBox=\"0 0 720 540\">\n";
    out += metadata_comment(meta);
    out +=
        "<style>\n"
        ".q-high-w-high-c{fill:#ffffff;}\n"
        ".q-high-w-low-c{fill:#fff3b0;}\n"
        ".q-low-w-high-c{fill:#d8f3dc;}\n"
        ".q-low-w-low-c{fill:#d0e8ff;}\n"
        ".baseline{stroke:#555555;stroke-width:1;stroke-dasharray:4 3;}\n"
        ".frame{fill:none;stroke:#222222;stroke-width:1;}\n"
        ".tick{stroke:#222222;stroke-width:1;}\n"
        ".tick-label{font:12px sans-serif;fill:#222222;}\n"
        ".axis-title{font:14px sans-serif;fill:#222222;}\n"
        ".point{fill:#1f4e79;stroke:#ffffff;stroke-width:1;}\n"
        ".label{font:12px sans-serif;fill:#111111;}\n"
        "</style>\n";

    const double bx = f.px(data.baseline_w);
    const double by = f.py(data.baseline_c);
    emit_rect(out, "q-low-w-low-c", f.x0, by, bx - f.x0, f.y1 - by);
    emit_rect(out, "q-low-w-high-c", f.x0, f.y0, bx - f.x0, by - f.y0);
    emit_rect(out, "q-high-w-low-c", bx, by, f.x1 - bx, f.y1 - by);
    emit_rect(out, "q-high-w-high-c", bx, f.y0, f.x1 - bx, by - f.y0);
    emit_line(out, "baseline", bx, f.y0, bx, f.y1);
    emit_line(out, "baseline", f.x0, by, f.x1, by);

    const double ticks[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    emit_axes(out, f, ticks, "warmth", "competence");

    for (const WcScatterData::Point& p : data.points) {
        const double cx = f.px(p.w);
        const double cy = f.py(p.c);
        out += "<circle class=\"point\"";
        attr(out, "cx", cx);
        attr(out, "cy", cy);
        out += " r=\"4\"/>\n";
        emit_text(out, "label", cx + 6.0, cy - 6.0, p.label);
    }
    out += "</svg>\n";
    return out;
}

std::vector<TsPoint> ts_points_from_lexicon(const Lexicon& lex, const Thresholds& th) {
    std::vector<TsPoint> points;
    for (const auto& [term, entry] : lex.entries()) {
        if (!entry.trust || !entry.sociability) continue;
        const double warmth = entry.warmth
                                  ? *entry.warmth
                                  : combine_warmth(entry.trust, entry.sociability).warmth;
        points.push_back(TsPoint{*entry.trust, *entry.sociability, bin_score(warmth, th)});
    }
    return points;
}

std::string render_ts_scatter_svg(std::span<const TsPoint> points, const OutputMetadata& meta) {
    const Frame f{70.0, 30.0, 610.0, 570.0, -3.0, 3.0};
    std::string out =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" "
        "viewBox=\"0 0 640 640\">\n";
    out += metadata_comment(meta);
    out +=
        "<style>\n"
        ".frame{fill:none;stroke:#222222;stroke-width:1;}\n"
        ".diag{stroke:#999999;stroke-width:1;stroke-dasharray:4 3;}\n"
        ".tick{stroke:#222222;stroke-width:1;}\n"
        ".tick-label{font:12px sans-serif;fill:#222222;}\n"
        ".axis-title{font:14px sans-serif;fill:#222222;}\n"
        ".point{stroke:none;fill-opacity:0.8;}\n"
        ".cat-high_neg{fill:#7f1d1d;}\n"
        ".cat-moderate_neg{fill:#dc2626;}\n"
        ".cat-slight_neg{fill:#f59e0b;}\n"
        ".cat-neither{fill:#9ca3af;}\n"
        ".cat-slight_pos{fill:#84cc16;}\n"
        ".cat-moderate_pos{fill:#16a34a;}\n"
        ".cat-high_pos{fill:#166534;}\n"
        "</style>\n";

    emit_line(out, "diag", f.px(f.lo), f.py(f.lo), f.px(f.hi), f.py(f.hi));
    const double ticks[] = {-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
    emit_axes(out, f, ticks, "trust", "sociability");

    for (const TsPoint& p : points) {
        out += "<circle class=\"point cat-";
        out += category_name(p.warmth_category);
        out += '"';
        attr(out, "cx", f.px(p.trust));
        attr(out, "cy", f.py(p.sociability));
        out += " r=\"3\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

void write_wc_points_csv(const WcScatterData& data, std::ostream& out) {
    out << "label,warmth,competence\n";
    for (const WcScatterData::Point& p : data.points)
        out << p.label << ',' << format_double(p.w) << ',' << format_double(p.c) << '\n';
}

void write_ts_points_csv(const Lexicon& lex, std::ostream& out, const Thresholds& th) {
    out << "term,trust,sociability,warmth,warmth_class\n";
    for (const auto& [term, entry] : lex.entries()) {
        if (!entry.trust || !entry.sociability) continue;
        const double warmth = entry.warmth
                                  ? *entry.warmth
                                  : combine_warmth(entry.trust, entry.sociability).warmth;
        out << term << ',' << format_double(*entry.trust) << ','
            << format_double(*entry.sociability) << ',' << format_double(warmth) << ','
            << category_name(bin_score(warmth, th)) << '\n';
    }
}

std::vector<StreamBandRow> stream_chart_rows(const AcquisitionProfile& profile) {
    std::vector<StreamBandRow> rows;
    rows.reserve(profile.rows.size() * 3);
    for (const ProfileRow& r : profile.rows) {
        const double low_top = r.pct_low;
        const double neutral_top = r.pct_low + r.pct_neutral;
        const double high_top = neutral_top + r.pct_high;
        rows.push_back(StreamBandRow{r.age_bucket, "low", 0.0, low_top});
        rows.push_back(StreamBandRow{r.age_bucket, "neutral", low_top, neutral_top});
        rows.push_back(StreamBandRow{r.age_bucket, "high", neutral_top, high_top});
    }
    return rows;
}

void write_stream_chart_csv(const AcquisitionProfile& profile, std::ostream& out) {
    out << "dimension,age,band,y0,y1\n";
    const std::string_view dim = dimension_name(profile.dimension);
    for (const StreamBandRow& row : stream_chart_rows(profile)) {
        out << dim << ',' << row.age_bucket << ',' << row.band << ',' << format_double(row.y0)
            << ',' << format_double(row.y1) << '\n';
    }
}

}  // namespace warmlex
