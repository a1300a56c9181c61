#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace wanet {

// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_u64(std::uint64_t v) {
    char buf[24];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Minimal CSV emitter; all experiment outputs are plain comma-separated rows
// with a fixed header, so there is no quoting to deal with.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string_view>& cols) { row_strings(cols); }

    void comment(std::string_view text) { out_ << "# " << text << "\n"; }

    class Row {
    public:
        explicit Row(std::ostream& out) : out_(out) {}
        Row& cell(std::string_view s) {
            if (!first_) out_ << ',';
            first_ = false;
            out_ << s;
            return *this;
        }
        Row& cell(double v) { return cell(std::string_view(format_double(v))); }
        Row& cell(std::uint64_t v) { return cell(std::string_view(format_u64(v))); }
        ~Row() { out_ << '\n'; }

    private:
        std::ostream& out_;
        bool first_ = true;
    };

    Row row() { return Row(out_); }

private:
    void row_strings(const std::vector<std::string_view>& cols) {
        bool first = true;
        for (const auto& c : cols) {
            if (!first) out_ << ',';
            first = false;
            out_ << c;
        }
        out_ << '\n';
    }

    std::ostream& out_;
};

}  // namespace wanet
