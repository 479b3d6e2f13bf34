#pragma once

#include <string>
#include <vector>

namespace rotlab {

/// Shortest round-trippable decimal form of a double; stable across runs.
std::string format_double(double v);

/// Writes content atomically (temp file in the same directory, then rename).
void write_file_atomic(const std::string& path, const std::string& content);

/// Minimal CSV assembly: one header line, then rows of pre-formatted cells.
class CsvBuilder {
public:
    explicit CsvBuilder(const std::vector<std::string>& columns);
    void add_row(const std::vector<std::string>& cells);
    const std::string& text() const { return text_; }
    void write(const std::string& path) const;

private:
    std::size_t n_columns_;
    std::string text_;
};

/// Self-contained scatter/line SVG plot, inline styling only.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label);
    void add_points(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& color);
    void add_line(const std::vector<double>& x, const std::vector<double>& y,
                  const std::string& color);
    std::string render() const;
    void write(const std::string& path) const;

private:
    struct Series {
        std::vector<double> x, y;
        std::string color;
        bool line;
    };
    std::string title_, x_label_, y_label_;
    std::vector<Series> series_;
};

}  // namespace rotlab
