#include "stns/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stns {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string record_to_json(const EnergyRecord& r) {
    std::ostringstream o;
    o << "{\"type\":\"record\""
      << ",\"t\":" << fmt(r.t)
      << ",\"lp_p\":" << fmt(r.lp_p)
      << ",\"grad_pow\":" << fmt(r.grad_pow)
      << ",\"l2_sq\":" << fmt(r.l2_sq)
      << ",\"grad_l2_sq\":" << fmt(r.grad_l2_sq)
      << ",\"lap_l2_sq\":" << fmt(r.lap_l2_sq)
      << ",\"l3p_p\":" << fmt(r.l3p_p)
      << ",\"l6_sq\":" << fmt(r.l6_sq)
      << ",\"div_residual\":" << fmt(r.div_residual)
      << ",\"cutoff_value\":" << fmt(r.cutoff_value)
      << ",\"taming_dissipation\":" << fmt(r.taming_dissipation)
      << ",\"pressure_l3\":" << fmt(r.pressure_l3)
      << ",\"jump_count_cum\":" << r.jump_count_cum
      << "}";
    return o.str();
}

std::string summary_to_json(const TrajectorySummary& s) {
    std::ostringstream o;
    o << "{\"type\":\"summary\""
      << ",\"sup_lp_p\":" << fmt(s.sup_lp_p)
      << ",\"int_grad_pow\":" << fmt(s.int_grad_pow)
      << ",\"sup_grad_l2\":" << fmt(s.sup_grad_l2)
      << ",\"int_lap_l2\":" << fmt(s.int_lap_l2)
      << ",\"final_t\":" << fmt(s.final_t)
      << ",\"energy_ratio\":" << fmt(s.energy_ratio);
    if (s.stopped_at)
        o << ",\"stopped_at\":" << fmt(*s.stopped_at);
    o << "}";
    return o.str();
}

EnergyRecord record_from_json(const std::string& line) {
    auto j = nlohmann::json::parse(line);
    EnergyRecord r;
    r.t = j.at("t").get<double>();
    r.lp_p = j.at("lp_p").get<double>();
    r.grad_pow = j.at("grad_pow").get<double>();
    r.l2_sq = j.at("l2_sq").get<double>();
    r.grad_l2_sq = j.at("grad_l2_sq").get<double>();
    r.lap_l2_sq = j.at("lap_l2_sq").get<double>();
    r.l3p_p = j.at("l3p_p").get<double>();
    r.l6_sq = j.at("l6_sq").get<double>();
    r.div_residual = j.at("div_residual").get<double>();
    r.cutoff_value = j.at("cutoff_value").get<double>();
    r.taming_dissipation = j.at("taming_dissipation").get<double>();
    r.pressure_l3 = j.at("pressure_l3").get<double>();
    r.jump_count_cum = j.at("jump_count_cum").get<std::uint64_t>();
    return r;
}

RecordFile read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_records: cannot open '" + path + "'");
    RecordFile out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        std::string type = j.value("type", "");
        if (type == "config") {
            out.config_line = line;
        } else if (type == "record") {
            out.records.push_back(record_from_json(line));
        } else {
            out.other_lines.push_back(line);
        }
    }
    return out;
}

void write_records(const std::string& path, const std::string& config_line,
                   const std::vector<EnergyRecord>& records,
                   const std::string& summary_line) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("write_records: cannot open '" + path + "'");
    if (!config_line.empty()) out << config_line << "\n";
    for (const auto& r : records) out << record_to_json(r) << "\n";
    if (!summary_line.empty()) out << summary_line << "\n";
}

namespace {

template <class T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
void get_at(std::ifstream& in, T& v, const char* what) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in)
        throw std::runtime_error(std::string("read_snapshot: truncated reading ") + what +
                                 " at offset " + std::to_string(in.tellg()));
}

}  // namespace

void write_snapshot(const std::string& path, const RealVectorField& u, double t) {
    static_assert(sizeof(double) == 8, "snapshot format requires 64-bit doubles");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_snapshot: cannot open '" + path + "'");
    out.write("STNS", 4);
    put(out, kSnapshotVersion);
    put(out, static_cast<std::uint32_t>(u.grid.n()));
    put(out, u.grid.box_length);
    put(out, t);
    put(out, static_cast<std::uint32_t>(3));
    out.write(reinterpret_cast<const char*>(u.v.data()),
              static_cast<std::streamsize>(u.v.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_snapshot: write failed for '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_snapshot: cannot open '" + path + "'");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "STNS", 4) != 0)
        throw std::runtime_error("read_snapshot: bad magic at offset 0 in '" + path + "'");
    std::uint32_t version = 0, ng = 0, ncomp = 0;
    double L = 0.0, t = 0.0;
    get_at(in, version, "version");
    if (version != kSnapshotVersion)
        throw std::runtime_error("read_snapshot: unsupported version " +
                                 std::to_string(version));
    get_at(in, ng, "N_g");
    get_at(in, L, "L");
    get_at(in, t, "t");
    get_at(in, ncomp, "component count");
    if (ncomp != 3)
        throw std::runtime_error("read_snapshot: expected 3 components, got " +
                                 std::to_string(ncomp));
    Snapshot snap;
    snap.t = t;
    snap.field = RealVectorField(GridSpec(static_cast<int>(ng), L));
    in.read(reinterpret_cast<char*>(snap.field.v.data()),
            static_cast<std::streamsize>(snap.field.v.size() * sizeof(double)));
    if (!in)
        throw std::runtime_error("read_snapshot: payload length mismatch in '" + path +
                                 "' at offset " + std::to_string(in.tellg()));
    char extra;
    if (in.read(&extra, 1))
        throw std::runtime_error("read_snapshot: trailing bytes after payload in '" + path +
                                 "'");
    return snap;
}

}  // namespace stns
