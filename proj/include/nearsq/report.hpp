#pragma once

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace nearsq {

// Line-delimited record stream: one JSON object per line, append-only,
// keys emitted in sorted order so identical runs produce identical bytes.
// Timing fields are confined to summary records and excluded from the
// determinism contract.
class ReportSink {
public:
    // "-" or empty: stdout
    explicit ReportSink(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path, std::ios::app);
            if (!*file_) throw std::runtime_error("cannot open report path: " + path);
        }
    }

    void emit(const nlohmann::json& record) {
        out() << record.dump() << '\n';
        out().flush();
    }

private:
    std::ostream& out() { return file_ ? *file_ : std::cout; }
    std::unique_ptr<std::ofstream> file_;
};

}  // namespace nearsq
