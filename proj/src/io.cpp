#include "qtorus/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace qtorus {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string format_complex(cplx z) {
  std::string s = fmt17(z.real());
  if (z.imag() >= 0.0 || std::isnan(z.imag())) s += "+";
  s += fmt17(z.imag());
  s += "i";
  return s;
}

cplx parse_complex(const std::string& input) {
  // Strip whitespace.
  std::string s;
  for (char c : input)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("parse_complex: empty string");

  const bool has_i = (s.back() == 'i' || s.back() == 'I');
  if (!has_i) {
    std::size_t pos = 0;
    const double re = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("parse_complex: trailing junk in '" + input + "'");
    return {re, 0.0};
  }

  s.pop_back();  // drop the 'i'
  // Split at the last '+'/'-' that is not a leading sign and not part of an
  // exponent; everything after it is the imaginary part.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    const char c = s[i];
    if ((c == '+' || c == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }

  const auto parse_signed = [&input](std::string t) -> double {
    if (t.empty() || t == "+") t = "1";
    else if (t == "-") t = "-1";
    std::size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size())
      throw std::invalid_argument("parse_complex: malformed number in '" + input + "'");
    return v;
  };

  if (split == std::string::npos) return {0.0, parse_signed(s)};  // pure imaginary
  return {parse_signed(s.substr(0, split)), parse_signed(s.substr(split))};
}

json to_json(const SweepWeights& s) {
  json steps = json::array();
  for (const EdgeWeights& w : s.steps)
    steps.push_back({{"a", complex_json(w.a)}, {"b", complex_json(w.b)}, {"c", complex_json(w.c)}});
  const EdgeWeights& w0 = s.steps.front();
  return {{"word", s.word.str()},
          {"eps", s.word.eps},
          {"steps", steps},
          {"product", complex_json(w0.a * w0.b * w0.c)},
          {"periodicity_defect", s.periodicity_defect()}};
}

json to_json(const LogLift& lf) {
  const auto arr = [](const std::vector<cplx>& v) {
    json a = json::array();
    for (cplx z : v) a.push_back(complex_json(z));
    return a;
  };
  return {{"theta_v", complex_json(lf.theta_v)},
          {"eta", lf.eta},
          {"A", arr(lf.A)},
          {"B", arr(lf.B)},
          {"C", arr(lf.C)},
          {"V", arr(lf.V)},
          {"lhat", lf.lhat},
          {"mhat", lf.mhat},
          {"nhat", lf.nhat}};
}

json to_json(const GeomResult& g) {
  json shapes = json::array();
  for (cplx z : g.shapes) shapes.push_back(complex_json(z));
  return {{"shapes", shapes}, {"volume", g.volume}};
}

namespace {

json mode_json(const ModeFit& m) {
  return {{"coeffs", m.coeffs}, {"rms", m.rms}, {"count", m.count}, {"limit", m.limit}};
}

}  // namespace

json to_json(const FitResult& f) {
  return {{"mode1", mode_json(f.mode1)},
          {"mode3", mode_json(f.mode3)},
          {"n_cut", f.n_cut},
          {"degree", f.degree},
          {"parity_flag", f.parity_flag}};
}

json to_json(const VolumeComparison& c) {
  return {{"volume", c.vol},
          {"volume_over_4pi", c.vol_over_4pi},
          {"dev1_abs", c.dev1_abs},
          {"dev3_abs", c.dev3_abs},
          {"tol", c.tol},
          {"no_prediction", c.no_prediction},
          {"pass1", c.pass1},
          {"pass3", c.pass3}};
}

std::string to_csv(const TraceSeries& s) {
  std::string out = "n,mode,re_trace,im_trace,abs_trace,ell,flags\n";
  for (const TraceRow& r : s.rows) {
    out += std::to_string(r.n);
    out += ",";
    out += std::to_string(r.mode);
    out += ",";
    out += fmt17(r.trace.real());
    out += ",";
    out += fmt17(r.trace.imag());
    out += ",";
    out += fmt17(r.abs_trace);
    out += ",";
    out += fmt17(r.ell);
    out += ",";
    out += r.flags;
    out += "\n";
  }
  return out;
}

TraceSeries series_from_csv(std::istream& in) {
  TraceSeries s;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("series_from_csv: empty input");
  if (line.rfind("n,mode,", 0) != 0)
    throw std::invalid_argument("series_from_csv: unexpected header '" + line + "'");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() == 6) fields.push_back("");  // empty flags field after trailing comma
    if (fields.size() != 7)
      throw std::invalid_argument("series_from_csv: bad row '" + line + "'");
    TraceRow r;
    r.n = std::stoi(fields[0]);
    r.mode = std::stoi(fields[1]);
    r.trace = cplx(std::stod(fields[2]), std::stod(fields[3]));
    r.abs_trace = std::stod(fields[4]);
    r.ell = std::stod(fields[5]);
    r.flags = fields[6];
    s.rows.push_back(std::move(r));
  }
  return s;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out.flush()) throw std::runtime_error("failed writing " + path);
}

}  // namespace qtorus
