#include "nearsq/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nearsq {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

void SweepCheckpoint::add_line(const std::string& line) {
    lines.push_back(line);
    digest = fnv1a(digest, line);
}

void SweepCheckpoint::bump(const std::string& counter, long long by) {
    counters[counter] += by;
}

void write_checkpoint(const std::string& path, const SweepCheckpoint& st) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
        out << "nearsq-checkpoint v1\n";
        out << "scan " << st.scan_id << "\n";
        out << "rows_done " << st.rows_done << "\n";
        out << "last_row " << st.last_row << "\n";
        for (const auto& [k, v] : st.counters) out << "counter " << k << " " << v << "\n";
        out << "digest " << hex64(st.digest) << "\n";
        for (const auto& l : st.lines) out << "| " << l << "\n";
        out << "end\n";
        if (!out) throw std::runtime_error("short write on checkpoint: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move checkpoint into place: " + path);
}

bool load_checkpoint(const std::string& path, const std::string& scan_id,
                     SweepCheckpoint& st) {
    std::ifstream in(path);
    if (!in) return false;
    std::string line;
    if (!std::getline(in, line) || line != "nearsq-checkpoint v1")
        throw std::runtime_error("unrecognized checkpoint format: " + path);
    SweepCheckpoint loaded;
    std::string digest_hex;
    bool saw_end = false;
    while (std::getline(in, line)) {
        if (line == "end") {
            saw_end = true;
            break;
        }
        if (line.rfind("| ", 0) == 0) {
            loaded.add_line(line.substr(2));
            continue;
        }
        std::istringstream is(line);
        std::string key;
        is >> key;
        if (key == "scan")
            loaded.scan_id = line.substr(5);
        else if (key == "rows_done")
            is >> loaded.rows_done;
        else if (key == "last_row")
            is >> loaded.last_row;
        else if (key == "counter") {
            std::string name;
            long long v;
            is >> name >> v;
            loaded.counters[name] = v;
        } else if (key == "digest")
            is >> digest_hex;
    }
    if (!saw_end) throw std::runtime_error("truncated checkpoint: " + path);
    if (loaded.scan_id != scan_id)
        throw std::runtime_error("checkpoint belongs to a different scan: '" +
                                 loaded.scan_id + "'");
    if (digest_hex != hex64(loaded.digest))
        throw std::runtime_error("checkpoint digest mismatch: " + path);
    st = std::move(loaded);
    return true;
}

}  // namespace nearsq
