#pragma once

// Locale-independent CSV output: dot decimal separator, '\n' newlines,
// doubles at 10 significant digits, '#'-prefixed trailing comment lines.

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace rlc {

inline std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 10);
    return std::string(buf, res.ptr);
}

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    CsvWriter& cell(std::string_view text) {
        separate();
        out_ << text;
        return *this;
    }
    CsvWriter& cell(double value) { return cell(format_number(value)); }
    CsvWriter& cell(std::uint64_t value) { return cell(std::to_string(value)); }
    CsvWriter& cell(std::uint32_t value) {
        return cell(static_cast<std::uint64_t>(value));
    }

    void end_row() {
        out_ << '\n';
        first_ = true;
    }

    void comment(std::string_view text) { out_ << "# " << text << '\n'; }

private:
    void separate() {
        if (!first_) {
            out_ << ',';
        }
        first_ = false;
    }

    std::ostream& out_;
    bool first_ = true;
};

}  // namespace rlc
