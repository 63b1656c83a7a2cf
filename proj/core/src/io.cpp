#include "facetrack/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_set>
#include <utility>

#include "facetrack/errors.hpp"

namespace facetrack {

namespace {

[[noreturn]] void fail(const std::string& source, std::int64_t line, const std::string& msg) {
    throw ParseError(source, line, msg);
}

[[noreturn]] void fail_validation(const std::string& source, std::int64_t line,
                                  const std::string& msg) {
    throw ValidationError(source + ":" + std::to_string(line) + ": " + msg);
}

double parse_double_token(std::string_view tok, const std::string& source, std::int64_t line,
                          std::string_view field) {
    double value = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || tok.empty()) {
        fail(source, line, "field '" + std::string(field) + "': not a number: '" +
                               std::string(tok) + "'");
    }
    return value;
}

std::int64_t parse_int_token(std::string_view tok, const std::string& source, std::int64_t line,
                             std::string_view field) {
    std::int64_t value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || tok.empty()) {
        fail(source, line, "field '" + std::string(field) + "': not an integer: '" +
                               std::string(tok) + "'");
    }
    return value;
}

// Splits on runs of spaces/tabs; never yields empty tokens.
std::vector<std::string_view> split_fields(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) {
            ++i;
        }
        std::size_t start = i;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t') {
            ++i;
        }
        if (i > start) {
            out.push_back(text.substr(start, i - start));
        }
    }
    return out;
}

std::vector<std::string_view> split_on(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

bool is_skippable(std::string_view line) {
    for (char c : line) {
        if (c == '#') {
            return true;
        }
        if (c != ' ' && c != '\t') {
            return false;
        }
    }
    return true;  // blank
}

BBox make_box(double x, double y, double w, double h, const std::string& source,
              std::int64_t line) {
    try {
        return BBox(x, y, w, h);
    } catch (const ValidationError& e) {
        fail_validation(source, line, e.what());
    }
}

struct DetectionFields {
    static constexpr std::array<std::string_view, 11> required = {
        "frame", "det", "x", "y", "w", "h", "conf", "yaw", "pitch", "roll", "blur"};
};

}  // namespace

std::vector<DetectionRecord> parse_detections(std::istream& in, const std::string& source,
                                              std::size_t expected_dim) {
    std::vector<DetectionRecord> records;
    std::string raw;
    std::int64_t line_no = 0;
    std::int64_t prev_frame = -1;
    std::unordered_set<std::int64_t> frame_det_ids;
    std::size_t dim = expected_dim;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = strip_cr(raw);
        if (is_skippable(line)) {
            continue;
        }

        bool seen[DetectionFields::required.size()] = {};
        double num[DetectionFields::required.size()] = {};
        std::optional<Embedding> embedding;

        for (std::string_view tok : split_fields(line)) {
            const std::size_t eq = tok.find('=');
            if (eq == std::string_view::npos) {
                fail(source, line_no, "expected key=value, got '" + std::string(tok) + "'");
            }
            const std::string_view key = tok.substr(0, eq);
            const std::string_view val = tok.substr(eq + 1);

            if (key == "emb") {
                if (embedding) {
                    fail(source, line_no, "duplicate field 'emb'");
                }
                Embedding emb;
                for (std::string_view part : split_on(val, ',')) {
                    const double x = parse_double_token(part, source, line_no, "emb");
                    if (!std::isfinite(x)) {
                        fail_validation(source, line_no, "field 'emb': non-finite entry");
                    }
                    emb.push_back(x);
                }
                embedding = std::move(emb);
                continue;
            }

            std::size_t idx = DetectionFields::required.size();
            for (std::size_t i = 0; i < DetectionFields::required.size(); ++i) {
                if (key == DetectionFields::required[i]) {
                    idx = i;
                    break;
                }
            }
            if (idx == DetectionFields::required.size()) {
                fail(source, line_no, "unknown field '" + std::string(key) + "'");
            }
            if (seen[idx]) {
                fail(source, line_no, "duplicate field '" + std::string(key) + "'");
            }
            seen[idx] = true;
            if (key == "frame" || key == "det") {
                num[idx] = static_cast<double>(parse_int_token(val, source, line_no, key));
            } else {
                num[idx] = parse_double_token(val, source, line_no, key);
            }
        }

        for (std::size_t i = 0; i < DetectionFields::required.size(); ++i) {
            if (!seen[i]) {
                fail(source, line_no,
                     "missing field '" + std::string(DetectionFields::required[i]) + "'");
            }
        }

        DetectionRecord rec;
        rec.frame = static_cast<std::int64_t>(num[0]);
        rec.det_id = static_cast<std::int64_t>(num[1]);
        if (rec.frame < 0) {
            fail_validation(source, line_no, "field 'frame': must be >= 0");
        }
        rec.box = make_box(num[2], num[3], num[4], num[5], source, line_no);
        rec.quality = QualityAttrs{num[6], num[7], num[8], num[9], num[10]};
        try {
            rec.quality.validate();
        } catch (const ValidationError& e) {
            fail_validation(source, line_no, e.what());
        }
        rec.embedding = std::move(embedding);

        if (rec.embedding) {
            if (rec.embedding->empty()) {
                fail_validation(source, line_no, "field 'emb': empty embedding");
            }
            if (dim == 0) {
                dim = rec.embedding->size();
            } else if (rec.embedding->size() != dim) {
                fail_validation(source, line_no,
                                "field 'emb': dimension " +
                                    std::to_string(rec.embedding->size()) +
                                    " does not match run dimension " + std::to_string(dim));
            }
        }

        if (rec.frame < prev_frame) {
            fail_validation(source, line_no, "frames must be non-decreasing");
        }
        if (rec.frame != prev_frame) {
            frame_det_ids.clear();
            prev_frame = rec.frame;
        }
        if (!frame_det_ids.insert(rec.det_id).second) {
            fail_validation(source, line_no,
                            "duplicate det id " + std::to_string(rec.det_id) + " in frame " +
                                std::to_string(rec.frame));
        }

        records.push_back(std::move(rec));
    }
    return records;
}

std::string format_double(double value) {
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

void write_detections(const std::vector<DetectionRecord>& records, std::ostream& out) {
    for (const DetectionRecord& r : records) {
        out << "frame=" << r.frame << " det=" << r.det_id << " x=" << format_double(r.box.x)
            << " y=" << format_double(r.box.y) << " w=" << format_double(r.box.w)
            << " h=" << format_double(r.box.h) << " conf=" << format_double(r.quality.det_confidence)
            << " yaw=" << format_double(r.quality.yaw) << " pitch=" << format_double(r.quality.pitch)
            << " roll=" << format_double(r.quality.roll) << " blur=" << format_double(r.quality.blur);
        if (r.embedding) {
            out << " emb=";
            for (std::size_t i = 0; i < r.embedding->size(); ++i) {
                if (i != 0) {
                    out << ',';
                }
                out << format_double((*r.embedding)[i]);
            }
        }
        out << '\n';
    }
}

GroundTruth parse_ground_truth(std::istream& in, const std::string& source) {
    GroundTruth gt;
    std::string raw;
    std::int64_t line_no = 0;
    std::unordered_set<std::string> keys;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = strip_cr(raw);
        if (is_skippable(line)) {
            continue;
        }
        auto cols = split_on(line, ',');
        if (line_no == 1 && !cols.empty() && cols[0] == "frame") {
            continue;  // optional header
        }
        if (cols.size() != 6) {
            fail(source, line_no,
                 "expected 6 columns frame,identity,x,y,w,h, got " + std::to_string(cols.size()));
        }
        GroundTruth::Entry e;
        e.frame = parse_int_token(cols[0], source, line_no, "frame");
        if (e.frame < 0) {
            fail_validation(source, line_no, "field 'frame': must be >= 0");
        }
        e.identity = std::string(cols[1]);
        if (e.identity.empty()) {
            fail(source, line_no, "empty identity label");
        }
        e.box = make_box(parse_double_token(cols[2], source, line_no, "x"),
                         parse_double_token(cols[3], source, line_no, "y"),
                         parse_double_token(cols[4], source, line_no, "w"),
                         parse_double_token(cols[5], source, line_no, "h"), source, line_no);
        std::string key = std::to_string(e.frame) + '\x1f' + e.identity;
        if (!keys.insert(std::move(key)).second) {
            fail_validation(source, line_no,
                            "duplicate (frame, identity) = (" + std::to_string(e.frame) + ", " +
                                e.identity + ")");
        }
        gt.entries.push_back(std::move(e));
    }
    return gt;
}

void write_ground_truth(const GroundTruth& gt, std::ostream& out) {
    out << "frame,identity,x,y,w,h\n";
    for (const GroundTruth::Entry& e : gt.entries) {
        out << e.frame << ',' << e.identity << ',' << format_double(e.box.x) << ','
            << format_double(e.box.y) << ',' << format_double(e.box.w) << ','
            << format_double(e.box.h) << '\n';
    }
}

namespace {

void check_log_invariants(const AssignmentLog& log) {
    std::int64_t prev_frame = -1;
    std::unordered_set<std::int64_t> dets;
    std::unordered_set<std::int64_t> tracks;
    for (const AssignmentLog::Entry& e : log.entries) {
        if (e.frame < prev_frame) {
            throw ValidationError("assignment log: frames must be non-decreasing");
        }
        if (e.frame != prev_frame) {
            dets.clear();
            tracks.clear();
            prev_frame = e.frame;
        }
        if (!dets.insert(e.det_id).second) {
            throw ValidationError("assignment log: duplicate det id " + std::to_string(e.det_id) +
                                  " in frame " + std::to_string(e.frame));
        }
        if (!tracks.insert(e.track_id).second) {
            throw ValidationError("assignment log: duplicate track id " +
                                  std::to_string(e.track_id) + " in frame " +
                                  std::to_string(e.frame));
        }
    }
}

}  // namespace

AssignmentLog parse_assignments(std::istream& in, const std::string& source) {
    AssignmentLog log;
    std::string raw;
    std::int64_t line_no = 0;
    std::int64_t prev_frame = -1;
    std::unordered_set<std::int64_t> dets;
    std::unordered_set<std::int64_t> tracks;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = strip_cr(raw);
        if (is_skippable(line)) {
            continue;
        }
        auto cols = split_on(line, ',');
        if (line_no == 1 && !cols.empty() && cols[0] == "frame") {
            continue;
        }
        if (cols.size() != 7) {
            fail(source, line_no, "expected 7 columns frame,track_id,x,y,w,h,det_id, got " +
                                      std::to_string(cols.size()));
        }
        AssignmentLog::Entry e;
        e.frame = parse_int_token(cols[0], source, line_no, "frame");
        e.track_id = parse_int_token(cols[1], source, line_no, "track_id");
        e.box = make_box(parse_double_token(cols[2], source, line_no, "x"),
                         parse_double_token(cols[3], source, line_no, "y"),
                         parse_double_token(cols[4], source, line_no, "w"),
                         parse_double_token(cols[5], source, line_no, "h"), source, line_no);
        e.det_id = parse_int_token(cols[6], source, line_no, "det_id");
        if (e.frame < 0) {
            fail_validation(source, line_no, "field 'frame': must be >= 0");
        }

        if (e.frame < prev_frame) {
            fail_validation(source, line_no, "frames must be non-decreasing");
        }
        if (e.frame != prev_frame) {
            dets.clear();
            tracks.clear();
            prev_frame = e.frame;
        }
        if (!dets.insert(e.det_id).second) {
            fail_validation(source, line_no, "duplicate det id " + std::to_string(e.det_id) +
                                                 " in frame " + std::to_string(e.frame));
        }
        if (!tracks.insert(e.track_id).second) {
            fail_validation(source, line_no, "duplicate track id " + std::to_string(e.track_id) +
                                                 " in frame " + std::to_string(e.frame));
        }
        log.entries.push_back(e);
    }
    return log;
}

void write_assignments(const AssignmentLog& log, std::ostream& out) {
    check_log_invariants(log);
    out << "frame,track_id,x,y,w,h,det_id\n";
    for (const AssignmentLog::Entry& e : log.entries) {
        out << e.frame << ',' << e.track_id << ',' << format_double(e.box.x) << ','
            << format_double(e.box.y) << ',' << format_double(e.box.w) << ','
            << format_double(e.box.h) << ',' << e.det_id << '\n';
    }
}

void write_merge_events(const std::vector<MergeEvent>& events, std::ostream& out) {
    out << "frame,absorbed_id,surviving_id\n";
    for (const MergeEvent& e : events) {
        out << e.frame << ',' << e.absorbed_id << ',' << e.surviving_id << '\n';
    }
}

std::vector<MergeEvent> parse_merge_events(std::istream& in, const std::string& source) {
    std::vector<MergeEvent> events;
    std::string raw;
    std::int64_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = strip_cr(raw);
        if (is_skippable(line)) {
            continue;
        }
        auto cols = split_on(line, ',');
        if (line_no == 1 && !cols.empty() && cols[0] == "frame") {
            continue;
        }
        if (cols.size() != 3) {
            fail(source, line_no, "expected 3 columns frame,absorbed_id,surviving_id");
        }
        MergeEvent e;
        e.frame = parse_int_token(cols[0], source, line_no, "frame");
        e.absorbed_id = parse_int_token(cols[1], source, line_no, "absorbed_id");
        e.surviving_id = parse_int_token(cols[2], source, line_no, "surviving_id");
        events.push_back(e);
    }
    return events;
}

}  // namespace facetrack
