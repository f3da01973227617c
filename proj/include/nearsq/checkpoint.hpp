#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nearsq {

// Resumable state of an ordered parameter sweep: the last finished row, the
// record lines emitted so far, and aggregate counters. The on-disk form is a
// versioned, self-describing text file written atomically (tmp + rename);
// resuming reproduces byte-identical final output.
struct SweepCheckpoint {
    std::string scan_id;
    long rows_done = 0;
    long last_row = -1;
    std::vector<std::string> lines;
    std::map<std::string, long long> counters;
    std::uint64_t digest = 0xcbf29ce484222325ull;

    void add_line(const std::string& line);
    void bump(const std::string& counter, long long by = 1);
};

void write_checkpoint(const std::string& path, const SweepCheckpoint& st);
// false when the file does not exist; throws on format or identity mismatch
bool load_checkpoint(const std::string& path, const std::string& scan_id,
                     SweepCheckpoint& st);

}  // namespace nearsq
