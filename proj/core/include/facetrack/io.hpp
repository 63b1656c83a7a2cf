#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "facetrack/detection.hpp"

namespace facetrack {

// Detection streams are line-delimited text, one record per line, with
// space-separated key=value fields:
//
//   frame=0 det=0 x=10.5 y=20 w=40 h=44 conf=0.97 yaw=3.2 pitch=-1 roll=0.5 blur=0.93 emb=0.1,-0.2,...
//
// `emb` is optional and holds a comma-separated float list. Blank lines and
// lines starting with '#' are skipped. Frames must be non-decreasing and
// (frame, det) pairs unique. See README for the full grammar.

/// Parses a detection stream. `expected_dim` fixes the embedding dimension
/// for the run; 0 infers it from the first embedding seen. Mixed dimensions
/// are a hard error. Throws ParseError (malformed lines, bad ordering) or
/// the underlying ValidationError message wrapped with the line position.
std::vector<DetectionRecord> parse_detections(std::istream& in, const std::string& source,
                                              std::size_t expected_dim = 0);

/// Writes records in the format parse_detections reads. Floats are written
/// shortest-round-trip, so parse(write(x)) reproduces x bit-exactly.
void write_detections(const std::vector<DetectionRecord>& records, std::ostream& out);

/// Parses `frame,identity,x,y,w,h` CSV (header optional, no quoting).
/// Duplicate (frame, identity) pairs are an error.
GroundTruth parse_ground_truth(std::istream& in, const std::string& source);

void write_ground_truth(const GroundTruth& gt, std::ostream& out);

/// Parses `frame,track_id,x,y,w,h,det_id` CSV as written by
/// write_assignments (header optional on input). Validates frame ordering
/// and per-frame uniqueness of det_id and track_id.
AssignmentLog parse_assignments(std::istream& in, const std::string& source);

/// Writes the log as CSV with a `frame,track_id,x,y,w,h,det_id` header.
/// An empty log produces header-only output. The log must satisfy the
/// AssignmentLog invariants; violations throw ValidationError.
void write_assignments(const AssignmentLog& log, std::ostream& out);

/// Merge events as `frame,absorbed_id,surviving_id` CSV with header.
void write_merge_events(const std::vector<MergeEvent>& events, std::ostream& out);

std::vector<MergeEvent> parse_merge_events(std::istream& in, const std::string& source);

/// Shortest-round-trip decimal rendering of a double (to_chars).
std::string format_double(double value);

}  // namespace facetrack
