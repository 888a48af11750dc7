#ifndef MCNET_CSV_HPP
#define MCNET_CSV_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace mcnet {

// Locale-independent float formatting. Metadata uses 17 significant digits so
// recorded parameters round-trip exactly; data rows use 12, which is enough
// for byte-identical reruns.
inline std::string format_double(double v, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// A CSV file with a self-describing `# key = value` metadata block followed
// by a header row and data rows.
class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void meta(const std::string& key, const std::string& value) {
        os_ << "# " << key << " = " << value << '\n';
    }
    void meta(const std::string& key, double value) { meta(key, format_double(value, 17)); }
    void meta(const std::string& key, long value) { meta(key, std::to_string(value)); }
    void meta(const std::string& key, unsigned long long value) {
        meta(key, std::to_string(value));
    }

    void header(const std::vector<std::string>& cols) { write_row(cols); }

    void row(const std::vector<std::string>& cells) { write_row(cells); }

    // Convenience for all-numeric rows.
    void row(const std::vector<double>& cells) {
        std::vector<std::string> s;
        s.reserve(cells.size());
        for (double v : cells) s.push_back(format_double(v));
        write_row(s);
    }

  private:
    void write_row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << cells[i];
        }
        os_ << '\n';
    }

    std::ostream& os_;
};

} // namespace mcnet

#endif
