#include "dedekind/io.hpp"

#include <fstream>

#include <json.hpp>

namespace dedekind {

namespace {

using nlohmann::json;

std::uint64_t parse_u64(const json& j, const char* field) {
    const std::string s = j.at(field).get<std::string>();
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::runtime_error(std::string("bad decimal in field ") + field);
    return v;
}

json parse_line(const std::string& line, const std::filesystem::path& path) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) {
        throw std::runtime_error("corrupt JSON line in " + path.string());
    }
    return j;
}

void atomic_write(const std::filesystem::path& path, const std::string& payload) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string());
        os << payload;
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

void save_interval_classes(const std::filesystem::path& path,
                           const std::vector<IntervalClass>& classes) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    for (const auto& cls : classes) {
        json j;
        j["lo"] = std::to_string(cls.representative.lo);
        j["hi"] = std::to_string(cls.representative.hi);
        j["card"] = std::to_string(cls.cardinality);
        os << j.dump() << '\n';
    }
    if (!os) throw std::runtime_error("write failed for " + path.string());
}

std::vector<IntervalClassRecord> load_interval_classes(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    std::vector<IntervalClassRecord> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const json j = parse_line(line, path);
        IntervalClassRecord rec;
        rec.lo = parse_u64(j, "lo");
        rec.hi = parse_u64(j, "hi");
        rec.cardinality = parse_u64(j, "card");
        out.push_back(rec);
    }
    return out;
}

std::string pair_file_name(Interval rep) {
    return std::to_string(rep.lo) + ":" + std::to_string(rep.hi) + ".jsonl";
}

void save_pair_classes(const std::filesystem::path& path, const std::vector<PairClass>& classes) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    for (const auto& pc : classes) {
        json j;
        j["a"] = std::to_string(pc.a);
        j["b"] = std::to_string(pc.b);
        j["card"] = std::to_string(pc.cardinality);
        j["weight"] = pc.weight;
        os << j.dump() << '\n';
    }
    if (!os) throw std::runtime_error("write failed for " + path.string());
}

std::vector<PairClassRecord> load_pair_classes(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    std::vector<PairClassRecord> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const json j = parse_line(line, path);
        PairClassRecord rec;
        rec.a = parse_u64(j, "a");
        rec.b = parse_u64(j, "b");
        rec.cardinality = parse_u64(j, "card");
        rec.weight = j.at("weight").get<int>();
        if (rec.weight != 1 && rec.weight != 2) {
            throw std::runtime_error("bad pair weight in " + path.string());
        }
        out.push_back(rec);
    }
    return out;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ck) {
    json j;
    j["base"] = ck.base;
    j["method"] = ck.method;
    j["chunks_per_class"] = ck.chunks_per_class;
    j["done"] = std::vector<std::string>(ck.done.begin(), ck.done.end());
    j["partial"] = ck.partial.to_string();
    atomic_write(path, j.dump(2) + "\n");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open checkpoint " + path.string());
    json j = json::parse(is, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("corrupt checkpoint " + path.string());
    Checkpoint ck;
    try {
        ck.base = j.at("base").get<int>();
        ck.method = j.at("method").get<std::string>();
        ck.chunks_per_class = j.at("chunks_per_class").get<std::vector<std::int64_t>>();
        for (const auto& id : j.at("done")) ck.done.insert(id.get<std::string>());
        ck.partial = BigCounter::from_string(j.at("partial").get<std::string>());
    } catch (const std::exception& e) {
        throw std::runtime_error("corrupt checkpoint " + path.string() + ": " + e.what());
    }
    return ck;
}

}  // namespace dedekind
