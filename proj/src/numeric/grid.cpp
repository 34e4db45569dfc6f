#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "jetham/errors.hpp"
#include "jetham/numeric.hpp"

namespace jetham {

namespace {

constexpr const char* kMagic = "JETHAM-GRID 1";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t byteswap64(std::uint64_t v) {
  std::uint64_t r = 0;
  for (int k = 0; k < 8; ++k) r = (r << 8) | ((v >> (8 * k)) & 0xffu);
  return r;
}

void put_le(std::ostream& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  if constexpr (std::endian::native == std::endian::big) bits = byteswap64(bits);
  char bytes[8];
  std::memcpy(bytes, &bits, 8);
  out.write(bytes, 8);
}

double get_le(const char* bytes) {
  std::uint64_t bits = 0;
  std::memcpy(&bits, bytes, 8);
  if constexpr (std::endian::native == std::endian::big) bits = byteswap64(bits);
  return std::bit_cast<double>(bits);
}

std::string next_line(std::istream& in, const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) throw NumericError(path.string() + ": truncated grid header");
  return line;
}

}  // namespace

GridFunction::GridFunction(std::vector<Axis> axes, std::vector<std::string> field_names)
    : axes_(std::move(axes)), names_(std::move(field_names)) {
  if (axes_.empty()) throw NumericError("grid needs at least one axis");
  for (const auto& a : axes_) {
    if (a.points == 0) throw NumericError("axis " + a.name + " has no points");
    if (!(a.spacing > 0.0)) throw NumericError("axis " + a.name + " needs a positive spacing");
    size_ *= a.points;
  }
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (std::find(names_.begin(), names_.begin() + static_cast<long>(k), names_[k]) != names_.begin() + static_cast<long>(k)) {
      throw NumericError("duplicate field " + names_[k]);
    }
  }
  data_.assign(names_.size(), std::vector<double>(size_, 0.0));
}

std::vector<std::size_t> GridFunction::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes_) s.push_back(a.points);
  return s;
}

bool GridFunction::has_field(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::vector<double>& GridFunction::field(const std::string& name) {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw NumericError("grid has no field " + name);
  return data_[static_cast<std::size_t>(it - names_.begin())];
}

const std::vector<double>& GridFunction::field(const std::string& name) const {
  return const_cast<GridFunction*>(this)->field(name);
}

void GridFunction::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("cannot write " + path.string());
  out << kMagic << '\n' << "axes " << axes_.size() << '\n';
  for (const auto& a : axes_) {
    out << a.name << ' ' << a.points << ' ' << format_double(a.origin) << ' ' << format_double(a.spacing) << '\n';
  }
  out << "fields " << names_.size() << '\n';
  for (const auto& n : names_) out << n << '\n';
  out << "end\n";
  for (const auto& f : data_) {
    for (double v : f) put_le(out, v);
  }
  if (!out) throw NumericError("failed writing " + path.string());
}

GridFunction GridFunction::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NumericError("cannot open " + path.string());
  if (next_line(in, path) != kMagic) throw NumericError(path.string() + ": not a grid file");

  auto counted = [&](const std::string& keyword) {
    std::istringstream line(next_line(in, path));
    std::string word;
    std::size_t count = 0;
    if (!(line >> word >> count) || word != keyword) {
      throw NumericError(path.string() + ": expected '" + keyword + " <count>'");
    }
    return count;
  };

  std::vector<Axis> axes(counted("axes"));
  for (auto& a : axes) {
    std::istringstream line(next_line(in, path));
    if (!(line >> a.name >> a.points >> a.origin >> a.spacing)) {
      throw NumericError(path.string() + ": malformed axis line");
    }
  }
  std::vector<std::string> names(counted("fields"));
  for (auto& n : names) {
    n = next_line(in, path);
    if (n.empty()) throw NumericError(path.string() + ": empty field name");
  }
  if (next_line(in, path) != "end") throw NumericError(path.string() + ": header must close with 'end'");

  GridFunction g(std::move(axes), std::move(names));
  std::vector<char> bytes(g.size_ * 8);
  for (auto& f : g.data_) {
    if (!in.read(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
      throw NumericError(path.string() + ": truncated field data");
    }
    for (std::size_t k = 0; k < g.size_; ++k) f[k] = get_le(bytes.data() + 8 * k);
  }
  if (in.peek() != std::char_traits<char>::eof()) throw NumericError(path.string() + ": trailing bytes after field data");
  return g;
}

}  // namespace jetham
