#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "dedekind/bigint.hpp"
#include "dedekind/canon.hpp"

namespace dedekind {

// Interval class files are JSON lines {"lo": "...", "hi": "...", "card": "..."},
// decimal strings, first-seen order. Pair class files add weight and live one
// file per interval representative, named "<lo>:<hi>.jsonl".

struct IntervalClassRecord {
    Element lo = 0;
    Element hi = 0;
    std::uint64_t cardinality = 0;
};

struct PairClassRecord {
    Element a = 0;
    Element b = 0;
    std::uint64_t cardinality = 0;
    int weight = 1;
};

void save_interval_classes(const std::filesystem::path& path,
                           const std::vector<IntervalClass>& classes);
std::vector<IntervalClassRecord> load_interval_classes(const std::filesystem::path& path);

std::string pair_file_name(Interval rep);
void save_pair_classes(const std::filesystem::path& path, const std::vector<PairClass>& classes);
std::vector<PairClassRecord> load_pair_classes(const std::filesystem::path& path);

// Checkpoint for resumable runs: identifies the computation, the chunk layout
// discovered so far and the exact partial sum. Chunk ids are "<class>:<sub>".
struct Checkpoint {
    int base = 0;
    std::string method;
    std::vector<std::int64_t> chunks_per_class;  // -1 while still unknown
    std::set<std::string> done;
    BigCounter partial;
};

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace dedekind
