#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "saa/presentation.hpp"

namespace saa {

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  std::size_t line_no;
};

/// A parsed .saa file. The presentation is set when the file used only
/// x/y stanzas; t stanzas describe a raw ternary form.
struct SaaFile {
  PrimeField field;
  std::size_t n = 0;
  TernaryForm form;
  std::optional<NilpotentPresentation> presentation;
};

/// Line-based .saa format:
///   saa 1
///   p <prime>
///   n <half-dimension>
///   x <i> <j> <k> <value>   (xi yj, yk) = value, 1 <= i < j < k <= n
///   y <i> <j> <k> <value>   (yi yj, yk) = value
///   t <a> <b> <c> <value>   global basis triple, 1 <= a < b < c <= 2n
/// '#' starts a comment; values lie in [1, p); duplicate triples are errors.
inline SaaFile read_saa(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool got_header = false;
  std::optional<PrimeField> field;
  std::optional<std::size_t> half_dim;
  std::optional<TernaryForm> form;
  std::optional<NilpotentPresentation> pres;
  bool only_presentation_stanzas = true;
  bool any_stanza = false;
  std::set<Triple> used;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;

    if (!got_header) {
      int version = -1;
      if (word != "saa" || !(ls >> version)) throw ParseError(line_no, "expected 'saa 1' header");
      if (version != 1) throw ParseError(line_no, "unsupported format version");
      got_header = true;
      continue;
    }
    if (word == "p") {
      long long v = -1;
      if (!(ls >> v) || v < 2 || v >= (1LL << 31)) throw ParseError(line_no, "invalid modulus");
      try {
        field = PrimeField(static_cast<std::uint32_t>(v));
      } catch (const Error& e) {
        throw ParseError(line_no, e.what());
      }
      continue;
    }
    if (word == "n") {
      long long v = -1;
      if (!(ls >> v) || v < 1 || v > 64) throw ParseError(line_no, "invalid half-dimension");
      half_dim = static_cast<std::size_t>(v);
      continue;
    }
    if (word == "x" || word == "y" || word == "t") {
      if (!field || !half_dim) throw ParseError(line_no, "stanza before 'p' and 'n' lines");
      if (!form) {
        form.emplace(*field, *half_dim);
        pres.emplace(*field, *half_dim);
      }
      long long a = 0, b = 0, c = 0, v = 0;
      if (!(ls >> a >> b >> c >> v)) throw ParseError(line_no, "expected four integers");
      if (v < 1 || std::uint64_t(v) >= field->p())
        throw ParseError(line_no, "value must lie in [1, p)");
      std::size_t bound = word == "t" ? 2 * *half_dim : *half_dim;
      if (!(1 <= a && a < b && b < c && std::uint64_t(c) <= bound))
        throw ParseError(line_no, "indices must satisfy 1 <= i < j < k <= " + std::to_string(bound));
      Triple global;
      if (word == "x")
        global = {2 * std::uint32_t(a) - 1, 2 * std::uint32_t(b), 2 * std::uint32_t(c)};
      else if (word == "y")
        global = {2 * std::uint32_t(a), 2 * std::uint32_t(b), 2 * std::uint32_t(c)};
      else
        global = {std::uint32_t(a), std::uint32_t(b), std::uint32_t(c)};
      if (!used.insert(global).second) throw ParseError(line_no, "duplicate triple");
      any_stanza = true;
      try {
        form->set(global[0], global[1], global[2], static_cast<std::uint32_t>(v));
        if (word == "x")
          pres->set_alpha(a, b, c, static_cast<std::uint32_t>(v));
        else if (word == "y")
          pres->set_beta(a, b, c, static_cast<std::uint32_t>(v));
        else
          only_presentation_stanzas = false;
      } catch (const Error& e) {
        throw ParseError(line_no, e.what());
      }
      continue;
    }
    throw ParseError(line_no, "unknown directive '" + word + "'");
  }
  if (!got_header) throw ParseError(line_no, "missing 'saa 1' header");
  if (!field || !half_dim) throw ParseError(line_no, "missing 'p' or 'n' line");
  if (!form) {
    form.emplace(*field, *half_dim);
    pres.emplace(*field, *half_dim);
  }
  SaaFile out{*field, *half_dim, std::move(*form), std::nullopt};
  if (only_presentation_stanzas || !any_stanza) out.presentation = std::move(*pres);
  return out;
}

inline SaaFile read_saa_string(const std::string& text) {
  std::istringstream in(text);
  return read_saa(in);
}

inline void write_saa(std::ostream& out, const NilpotentPresentation& p) {
  out << "saa 1\n";
  out << "p " << p.field().p() << "\n";
  out << "n " << p.half_dim() << "\n";
  for (const auto& [t, v] : p.alpha())
    out << "x " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << v << "\n";
  for (const auto& [t, v] : p.beta())
    out << "y " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << v << "\n";
}

inline void write_saa(std::ostream& out, const TernaryForm& form) {
  out << "saa 1\n";
  out << "p " << form.field().p() << "\n";
  out << "n " << form.half_dim() << "\n";
  for (const auto& [t, v] : form.entries())
    out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << v << "\n";
}

inline std::string to_saa_string(const NilpotentPresentation& p) {
  std::ostringstream os;
  write_saa(os, p);
  return os.str();
}

inline std::string to_saa_string(const TernaryForm& form) {
  std::ostringstream os;
  write_saa(os, form);
  return os.str();
}

}  // namespace saa
