#include "cli/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>

#include "cli/config.hpp"

namespace lcft::cli {

namespace {

// Shortest round-trip form, independent of the C locale.
std::string format(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string fixed(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 2);
  return std::string(buf, ptr);
}

std::string short_label(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 4);
  return std::string(buf, ptr);
}

}  // namespace

void Table::add_column(std::string name, std::vector<double> values) {
  if (!columns.empty() && values.size() != rows()) throw ConfigError("table columns differ in length");
  header.push_back(std::move(name));
  columns.push_back(std::move(values));
}

void make_increasing(Table& table) {
  const std::size_t n = table.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto& x = table.columns.front();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<std::size_t> keep;
  for (std::size_t k : order) {
    if (!keep.empty() && x[keep.back()] == x[k]) {
      for (const auto& col : table.columns) {
        if (col[keep.back()] != col[k]) throw ConfigError("table has two rows at abscissa " + format(x[k]));
      }
      continue;
    }
    keep.push_back(k);
  }
  for (auto& col : table.columns) {
    std::vector<double> sorted;
    sorted.reserve(keep.size());
    for (std::size_t k : keep) sorted.push_back(col[k]);
    col = std::move(sorted);
  }
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) out += (c ? "," : "") + table.header[c];
  out += '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + format(table.columns[c][r]);
    out += '\n';
  }
  return out;
}

std::string to_svg(const Table& table, const std::string& title) {
  const double width = 640, height = 400, left = 70, right = 20, top = 30, bottom = 40;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  const auto& x = table.columns.front();
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!x.empty()) {
    x0 = *std::min_element(x.begin(), x.end());
    x1 = *std::max_element(x.begin(), x.end());
    y0 = INFINITY;
    y1 = -INFINITY;
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
      for (double v : table.columns[c]) {
        if (!std::isfinite(v)) continue;
        y0 = std::min(y0, v);
        y1 = std::max(y1, v);
      }
    }
    if (!(y1 >= y0)) y0 = 0, y1 = 1;
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const auto px = [&](double v) { return left + (v - x0) / (x1 - x0) * (width - left - right); };
  const auto py = [&](double v) { return height - bottom - (v - y0) / (y1 - y0) * (height - top - bottom); };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" font-family=\"sans-serif\" "
                  "font-size=\"11\">\n<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  s += "<text x=\"" + fixed(left) + "\" y=\"18\" font-size=\"13\">" + title + "</text>\n";
  s += "<polyline fill=\"none\" stroke=\"black\" points=\"" + fixed(left) + "," + fixed(top) + " " + fixed(left) +
       "," + fixed(height - bottom) + " " + fixed(width - right) + "," + fixed(height - bottom) + "\"/>\n";
  s += "<text x=\"" + fixed(left) + "\" y=\"" + fixed(height - bottom + 15) + "\">" + short_label(x0) + "</text>\n";
  s += "<text x=\"" + fixed(width - right) + "\" y=\"" + fixed(height - bottom + 15) + "\" text-anchor=\"end\">" +
       short_label(x1) + "</text>\n";
  s += "<text x=\"" + fixed((left + width - right) / 2) + "\" y=\"" + fixed(height - 8) +
       "\" text-anchor=\"middle\">" + table.header.front() + "</text>\n";
  s += "<text x=\"" + fixed(left - 4) + "\" y=\"" + fixed(height - bottom) + "\" text-anchor=\"end\">" +
       short_label(y0) + "</text>\n";
  s += "<text x=\"" + fixed(left - 4) + "\" y=\"" + fixed(top + 8) + "\" text-anchor=\"end\">" + short_label(y1) +
       "</text>\n";
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    const char* color = colors[(c - 1) % 6];
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" points=\"";
    for (std::size_t r = 0; r < x.size(); ++r) {
      if (!std::isfinite(table.columns[c][r])) continue;
      s += fixed(px(x[r])) + "," + fixed(py(table.columns[c][r])) + " ";
    }
    s += "\"/>\n";
    s += "<text x=\"" + fixed(width - right - 4) + "\" y=\"" + fixed(top + 14.0 * double(c)) +
         "\" text-anchor=\"end\" fill=\"" + color + "\">" + table.header[c] + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

}  // namespace lcft::cli
