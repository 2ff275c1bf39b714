// JSON and CSV round-trips for schemes, spectra, and point sets.
//
// Layouts are deterministic (fixed key order, canonical rational strings), so
// identical inputs reproduce byte-identical artifacts.  A scheme file stores
// its number-field tower as the chain of defining integer polynomials plus
// root choices; field elements are nested coefficient vectors over that
// chain, and matrix entries carry their formal-variable monomials.  Loading
// reconstructs exact values, so audits can re-verify a scheme from its file
// alone.
#pragma once

#include <string>

#include "cps/pointset.hpp"
#include "cps/scheme.hpp"
#include "cps/spectrum.hpp"

namespace cps {

std::string scheme_to_json(const Scheme& sch);
Scheme scheme_from_json(const std::string& text);

// Spectrum input: {"spectrum": [{"poly": [c0..cd], "root": r, "mult": m}]}.
// Polynomial coefficients ascend; "root" is the canonical root index.
std::string spectrum_to_json(const SpectrumSpec& spec);
SpectrumSpec spectrum_from_json(const std::string& text, long precision_bits = 256);

// Rational square matrix input: {"matrix": [[...], ...]} with integer or
// "p/q" string entries.  Returns row-major rationals for spectrum extraction.
std::vector<std::vector<Rat>> rational_matrix_from_json(const std::string& text);

// Reads either input form: an object with "spectrum" or with "matrix".
SpectrumSpec spectrum_or_matrix_from_json(const std::string& text, long precision_bits = 256);

// Header row, then x1..xn, star1..star(s-n), r1..rs per line; doubles print
// in shortest round-trip form.  Loading cannot recover boundary flags (the
// format has no column for them), so loaded points carry boundary = false.
std::string points_to_csv(const PointSet& ps);
PointSet points_from_csv(const std::string& text);

// Scatter plot of the physical coordinates for n in {1, 2}.
std::string points_to_svg(const PointSet& ps);

} // namespace cps
