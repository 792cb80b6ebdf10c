#pragma once

#include <string>
#include <vector>

#include "tcc/data.hpp"

namespace tcc {

// Labeled CSV: optional header row, features in all but the last column,
// label in the last column as +1/-1 or 1/0 (0 maps to -1).
std::vector<LabeledExample> load_labeled_csv(const std::string& path);

// Triplet files are JSON lines, one object per triplet:
//   {"kind": "keep"|"flip", "a": [...], "b": [...], "c": [...]}
// Loading rejects mixed dimensions and malformed records with the offending
// line number.
void save_triplets_jsonl(const TripletDataset& data, const std::string& path);
TripletDataset load_triplets_jsonl(const std::string& path);

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double value);

}  // namespace tcc
