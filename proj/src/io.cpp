#include "etf_forge/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "etf_forge/error.hpp"

namespace etf::io {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char ch : text) {
    if (ch == '\n') {
      if (!current.empty() && current.back() == '\r') current.pop_back();
      lines.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  // Trailing blank lines carry no data.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  return tokens;
}

std::size_t parse_count(const std::string& tok, const char* what) {
  std::size_t value = 0;
  const auto* end = tok.data() + tok.size();
  const auto res = std::from_chars(tok.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end || value == 0) {
    throw Error("bad_header", std::string("invalid ") + what + " '" + tok + "'");
  }
  return value;
}

double parse_real(std::string_view s) {
  // from_chars rejects a leading '+', which is otherwise a valid decimal.
  const std::string_view digits = s.starts_with('+') ? s.substr(1) : s;
  double value = 0.0;
  const auto* end = digits.data() + digits.size();
  const auto res = std::from_chars(digits.data(), end, value);
  const bool double_sign = digits.size() != s.size() && digits.starts_with('-');
  if (double_sign || res.ec != std::errc{} || res.ptr != end || !std::isfinite(value)) {
    throw Error("bad_entry", "invalid real '" + std::string(s) + "'");
  }
  return value;
}

Complex parse_entry(const std::string& tok) {
  if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')') throw Error("bad_entry", "expected (re,im), got '" + tok + "'");
  const std::string_view body(tok.data() + 1, tok.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
    throw Error("bad_entry", "expected (re,im), got '" + tok + "'");
  }
  return {parse_real(body.substr(0, comma)), parse_real(body.substr(comma + 1))};
}

void append_real(std::string& out, double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io", "cannot write " + path.string());
  out << text;
  if (!out) throw Error("io", "write failed for " + path.string());
}

std::string format_matrix(const ComplexMatrix& m) {
  std::string out = "ETFMAT 1 " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out.push_back(' ');
      out.push_back('(');
      append_real(out, m(i, j).real());
      out.push_back(',');
      append_real(out, m(i, j).imag());
      out.push_back(')');
    }
    out.push_back('\n');
  }
  return out;
}

ComplexMatrix parse_matrix(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error("bad_header", "empty matrix file");
  const auto header = split_ws(lines[0]);
  if (header.size() != 4 || header[0] != "ETFMAT" || header[1] != "1") {
    throw Error("bad_header", "expected 'ETFMAT 1 <rows> <cols>', got '" + lines[0] + "'");
  }
  const std::size_t rows = parse_count(header[2], "row count");
  const std::size_t cols = parse_count(header[3], "column count");
  if (lines.size() - 1 != rows) {
    throw Error("dim_mismatch", "header says " + std::to_string(rows) + " rows, found " + std::to_string(lines.size() - 1));
  }
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto tokens = split_ws(lines[i + 1]);
    if (tokens.size() != cols) {
      throw Error("dim_mismatch", "row " + std::to_string(i) + " has " + std::to_string(tokens.size()) + " entries, expected " +
                                      std::to_string(cols));
    }
    for (const auto& tok : tokens) entries.push_back(parse_entry(tok));
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

ComplexMatrix read_matrix(const std::filesystem::path& path) { return parse_matrix(read_text(path)); }

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& m) { write_text(path, format_matrix(m)); }

std::string format_hadamard(const SkewHadamard& h) {
  const std::size_t m = h.order();
  std::string out = "HADAMARD 1 " + std::to_string(m) + "\n";
  out.reserve(out.size() + m * (m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out.push_back(h(i, j) == 1 ? '+' : '-');
    out.push_back('\n');
  }
  return out;
}

RawHadamard parse_hadamard_raw(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw Error("bad_header", "empty Hadamard file");
  const auto header = split_ws(lines[0]);
  if (header.size() != 3 || header[0] != "HADAMARD" || header[1] != "1") {
    throw Error("bad_header", "expected 'HADAMARD 1 <m>', got '" + lines[0] + "'");
  }
  RawHadamard raw;
  raw.order = parse_count(header[2], "order");
  if (lines.size() - 1 != raw.order) {
    throw Error("dim_mismatch", "header says order " + std::to_string(raw.order) + ", found " +
                                    std::to_string(lines.size() - 1) + " rows");
  }
  raw.entries.reserve(raw.order * raw.order);
  for (std::size_t i = 0; i < raw.order; ++i) {
    const std::string& line = lines[i + 1];
    if (line.size() != raw.order) throw Error("dim_mismatch", "row " + std::to_string(i) + " has wrong length");
    for (char ch : line) {
      if (ch == '+') {
        raw.entries.push_back(1);
      } else if (ch == '-') {
        raw.entries.push_back(-1);
      } else {
        throw Error("bad_entry", std::string("unexpected character '") + ch + "' in row " + std::to_string(i));
      }
    }
  }
  return raw;
}

SkewHadamard parse_hadamard(const std::string& text) {
  RawHadamard raw = parse_hadamard_raw(text);
  return SkewHadamard(raw.order, std::move(raw.entries));
}

RawHadamard read_hadamard_raw(const std::filesystem::path& path) { return parse_hadamard_raw(read_text(path)); }

SkewHadamard read_hadamard(const std::filesystem::path& path) { return parse_hadamard(read_text(path)); }

void write_hadamard(const std::filesystem::path& path, const SkewHadamard& h) { write_text(path, format_hadamard(h)); }

std::string certificate_json(const Certificate& cert) {
  nlohmann::ordered_json j;
  j["d"] = cert.d;
  j["n"] = cert.n;
  j["mu_target"] = cert.mu_target;
  j["coherence"] = cert.coherence;
  j["equiangularity_dev"] = cert.equiangularity_dev;
  j["tightness_residual"] = cert.tightness_residual;
  j["tolerance"] = cert.tolerance;
  j["pass"] = cert.pass;
  j["provenance"] = cert.provenance;
  return j.dump(2) + "\n";
}

Certificate parse_certificate_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad_entry", std::string("certificate is not valid JSON: ") + e.what());
  }
  static const char* const kKeys[] = {"d",         "n",    "mu_target",  "coherence", "equiangularity_dev",
                                      "tightness_residual", "tolerance", "pass",      "provenance"};
  if (!j.is_object() || j.size() != std::size(kKeys)) throw Error("bad_entry", "certificate must have exactly 9 keys");
  for (const char* key : kKeys) {
    if (!j.contains(key)) throw Error("bad_entry", std::string("certificate missing key ") + key);
  }
  try {
    Certificate cert;
    cert.d = j.at("d").get<std::size_t>();
    cert.n = j.at("n").get<std::size_t>();
    cert.mu_target = j.at("mu_target").get<double>();
    cert.coherence = j.at("coherence").get<double>();
    cert.equiangularity_dev = j.at("equiangularity_dev").get<double>();
    cert.tightness_residual = j.at("tightness_residual").get<double>();
    cert.tolerance = j.at("tolerance").get<double>();
    cert.pass = j.at("pass").get<bool>();
    cert.provenance = j.at("provenance").get<std::string>();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad_entry", std::string("certificate field has wrong type: ") + e.what());
  }
}

void write_certificate(const std::filesystem::path& path, const Certificate& cert) {
  write_text(path, certificate_json(cert));
}

Certificate read_certificate(const std::filesystem::path& path) { return parse_certificate_json(read_text(path)); }

}  // namespace etf::io
