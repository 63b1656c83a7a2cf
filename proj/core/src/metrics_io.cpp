#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "facetrack/io.hpp"
#include "facetrack/metrics.hpp"

namespace facetrack {

void write_metrics_json(const MetricsReport& report, std::ostream& out) {
    nlohmann::ordered_json j;
    j["gt_detections"] = report.counts.gt_detections;
    j["identities"] = report.counts.identities;
    j["matched"] = report.counts.matched_detections;
    j["soft_mismatches"] = report.counts.soft_mismatches;
    j["hard_mismatches"] = report.counts.hard_mismatches;
    j["frag"] = report.frag();
    j["idsw"] = report.idsw();
    j["crs"] = report.crs();
    nlohmann::ordered_json rates = nlohmann::ordered_json::array();
    for (int x = 0; x <= 100; ++x) {
        rates.push_back(report.completion_rate(x));
    }
    j["completion_rates"] = std::move(rates);
    out << j.dump(2) << '\n';
}

void write_crp_csv(const MetricsReport& report, std::ostream& out) {
    for (int x = 0; x <= 100; ++x) {
        out << x << ',' << format_double(report.completion_rate(x)) << '\n';
    }
}

namespace {

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

}  // namespace

void write_crp_svg(const MetricsReport& report, std::ostream& out) {
    constexpr double kWidth = 640.0;
    constexpr double kHeight = 400.0;
    constexpr double kLeft = 64.0;
    constexpr double kRight = 620.0;
    constexpr double kTop = 24.0;
    constexpr double kBottom = 352.0;

    const auto sx = [&](double x) { return kLeft + (kRight - kLeft) * x / 100.0; };
    const auto sy = [&](double r) { return kBottom - (kBottom - kTop) * r; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

    for (int x = 0; x <= 100; x += 20) {
        out << "<line x1=\"" << px(sx(x)) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(sx(x))
            << "\" y2=\"" << px(kBottom) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << px(sx(x)) << "\" y=\"" << px(kBottom + 20.0)
            << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">" << x
            << "</text>\n";
    }
    for (int i = 0; i <= 4; ++i) {
        const double r = i * 0.25;
        out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(sy(r)) << "\" x2=\"" << px(kRight)
            << "\" y2=\"" << px(sy(r)) << "\" stroke=\"#dddddd\"/>\n";
        out << "<text x=\"" << px(kLeft - 8.0) << "\" y=\"" << px(sy(r) + 4.0)
            << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">" << px(r)
            << "0</text>\n";
    }

    // Step-after profile: the rate holds until the next threshold.
    out << "<path d=\"M" << px(sx(0)) << ' ' << px(sy(report.completion_rate(0)));
    for (int x = 1; x <= 100; ++x) {
        out << " H" << px(sx(x)) << " V" << px(sy(report.completion_rate(x)));
    }
    out << "\" fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"2\"/>\n";

    out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kBottom) << "\" x2=\"" << px(kRight)
        << "\" y2=\"" << px(kBottom) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(kLeft)
        << "\" y2=\"" << px(kBottom) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px((kLeft + kRight) / 2.0) << "\" y=\"" << px(kBottom + 40.0)
        << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">"
        << "completion threshold (%)</text>\n";
    out << "<text x=\"16\" y=\"" << px((kTop + kBottom) / 2.0)
        << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "transform=\"rotate(-90 16 " << px((kTop + kBottom) / 2.0) << ")\">"
        << "fraction of identities</text>\n";
    out << "</svg>\n";
}

}  // namespace facetrack
