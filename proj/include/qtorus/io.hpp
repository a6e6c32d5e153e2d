#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qtorus/fit.hpp"
#include "qtorus/geometry.hpp"
#include "qtorus/lift.hpp"
#include "qtorus/sweep.hpp"
#include "qtorus/trace.hpp"

namespace qtorus {

using json = nlohmann::json;

// Complex numbers serialize as [re, im] throughout.
json complex_json(cplx z);

// Parse "a+bi" / "a-bi" forms: "1.5", "-0.75-0.1i", "2i", "-i", "1e-3+2.5i".
// Whitespace around the number is ignored.
cplx parse_complex(const std::string& s);
std::string format_complex(cplx z);

json to_json(const SweepWeights& s);
json to_json(const LogLift& lf);
json to_json(const GeomResult& g);
json to_json(const FitResult& f);
json to_json(const VolumeComparison& c);

// CSV with header n,mode,re_trace,im_trace,abs_trace,ell,flags and 17
// significant digits, so doubles round-trip exactly.
std::string to_csv(const TraceSeries& s);
TraceSeries series_from_csv(std::istream& in);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qtorus
