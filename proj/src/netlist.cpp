#include "fdrsense/netlist.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "fdrsense/error.hpp"
#include "text_util.hpp"

namespace fdrsense {
namespace {

struct Token {
  std::string text;
  int line = 0;
};

[[noreturn]] void syntax(int line, const std::string& what) {
  throw Error(ErrorCode::NetlistSyntax, "line " + std::to_string(line) + ": " + what);
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == '#' || c == '!') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (c == '{' || c == '}') {
      out.push_back({std::string(1, c), line});
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else {
      const std::size_t start = i;
      while (i < src.size() && src[i] != '{' && src[i] != '}' && src[i] != '#' && src[i] != '!' &&
             !std::isspace(static_cast<unsigned char>(src[i]))) {
        ++i;
      }
      out.push_back({std::string(src.substr(start, i - start)), line});
    }
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Element parse_all() {
    std::vector<Element> top;
    while (pos_ < tokens_.size()) top.push_back(parse_element());
    if (top.empty()) throw Error(ErrorCode::EmptyNetwork, "netlist contains no elements");
    if (top.size() == 1) return std::move(top.front());
    return Element::series(std::move(top));
  }

 private:
  const Token& next(const char* expecting) {
    if (pos_ >= tokens_.size()) {
      const int line = tokens_.empty() ? 1 : tokens_.back().line;
      syntax(line, std::string("unexpected end of netlist, expected ") + expecting);
    }
    return tokens_[pos_++];
  }

  double number(const char* what) {
    const Token& t = next(what);
    const auto v = text::parse_double(t.text);
    if (!v) syntax(t.line, std::string("expected ") + what + ", found '" + t.text + "'");
    return *v;
  }

  template <typename F>
  Element guarded(int line, F&& make) {
    try {
      return make();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NetlistSyntax) throw;
      syntax(line, e.what());
    }
  }

  Element parse_element() {
    const Token& head = next("an element");
    const int line = head.line;
    const std::string kind = text::upper(head.text);
    if (kind == "R") {
      const double v = number("a resistance in ohms");
      return guarded(line, [&] { return Element::resistor(v); });
    }
    if (kind == "L") {
      const double v = number("an inductance in nH");
      return guarded(line, [&] { return Element::inductor(v); });
    }
    if (kind == "C") {
      const double v = number("a capacitance in pF");
      return guarded(line, [&] { return Element::capacitor(v); });
    }
    if (kind == "TL") {
      MicrostripLine seg;
      seg.width_mm = number("a width in mm");
      seg.substrate.height_mm = number("a substrate height in mm");
      seg.substrate.eps_r = number("a relative permittivity");
      seg.substrate.tan_delta = 0.0;
      seg.length_mm = number("a length in mm");
      return guarded(line, [&] { return Element::line(seg); });
    }
    if (kind == "SER" || kind == "PAR") {
      const Token& open = next("'{'");
      if (open.text != "{") syntax(open.line, "expected '{' after " + kind);
      std::vector<Element> parts;
      while (true) {
        if (pos_ >= tokens_.size()) syntax(line, kind + "{ is never closed");
        if (tokens_[pos_].text == "}") {
          ++pos_;
          break;
        }
        parts.push_back(parse_element());
      }
      if (parts.empty()) syntax(line, kind + "{} has no elements");
      return kind == "SER" ? Element::series(std::move(parts)) : Element::parallel(std::move(parts));
    }
    syntax(line, "unknown element '" + head.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void format_into(const Element& e, int depth, std::string& out) {
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
  switch (e.kind()) {
    case Element::Kind::Resistor:
      out += "R " + num(e.value()) + "\n";
      return;
    case Element::Kind::Inductor:
      out += "L " + num(e.value()) + "\n";
      return;
    case Element::Kind::Capacitor:
      out += "C " + num(e.value()) + "\n";
      return;
    case Element::Kind::LineSegment: {
      const auto& s = e.segment();
      out += "TL " + num(s.width_mm) + " " + num(s.substrate.height_mm) + " " +
             num(s.substrate.eps_r) + " " + num(s.length_mm) + "\n";
      return;
    }
    case Element::Kind::Series:
    case Element::Kind::Parallel:
      out += e.kind() == Element::Kind::Series ? "SER{\n" : "PAR{\n";
      for (const auto& c : e.children()) format_into(c, depth + 1, out);
      out.append(static_cast<std::size_t>(depth) * 2, ' ');
      out += "}\n";
      return;
  }
}

TapConnection parse_connection(std::string_view word, int line) {
  const std::string w = text::lower(word);
  if (w == "shunt") return TapConnection::Shunt;
  if (w == "series") return TapConnection::Series;
  syntax(line, "unknown tap connection '" + std::string(word) + "'");
}

}  // namespace

Element parse_netlist(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

std::string format_netlist(const Element& net) {
  std::string out;
  format_into(net, 0, out);
  return out;
}

JcasaParams parse_jcasa_params(std::string_view src) {
  JcasaParams p;
  bool have_l0 = false;
  bool have_cc = false;
  std::map<long, std::pair<double, double>> patch;  // index -> (W, len)

  const auto lines = text::split_lines(src);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const int line = static_cast<int>(n) + 1;
    std::string_view raw = lines[n];
    if (const auto c = raw.find_first_of("#!"); c != std::string_view::npos) raw = raw.substr(0, c);
    raw = text::trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) syntax(line, "expected key = value");
    const std::string key = text::lower(text::trim(raw.substr(0, eq)));
    const std::string_view value = text::trim(raw.substr(eq + 1));
    const auto words = text::split_ws(value);

    const auto scalar = [&]() {
      const auto v = words.size() == 1 ? text::parse_double(words[0]) : std::nullopt;
      if (!v) syntax(line, "'" + key + "' needs one number");
      return *v;
    };

    if (key == "l0_nh") {
      p.l0_nH = scalar();
      have_l0 = true;
    } else if (key == "cc_pf") {
      p.cc_pF = scalar();
      have_cc = true;
    } else if (key == "diode.rs_ohm") {
      p.diode.r_s_ohm = scalar();
    } else if (key == "diode.ls_nh") {
      p.diode.l_s_nH = scalar();
    } else if (key == "diode.ct_pf") {
      p.diode.c_t_pF = scalar();
    } else if (key == "diode.rp_ohm") {
      p.diode.r_p_ohm = scalar();
    } else if (key == "placement.d1" || key == "placement.d2") {
      const auto frac = words.empty() ? std::nullopt : text::parse_double(words[0]);
      if (!frac || words.size() > 2) syntax(line, "'" + key + "' needs '<fraction> [shunt|series]'");
      const TapConnection conn =
          words.size() == 2 ? parse_connection(words[1], line) : TapConnection::Shunt;
      if (key == "placement.d1") {
        p.placement.d1_fraction = *frac;
        p.placement.d1_connection = conn;
      } else {
        p.placement.d2_fraction = *frac;
        p.placement.d2_connection = conn;
      }
    } else if (key == "load_ohm") {
      p.load_ohm = scalar();
    } else if (key == "load_connection") {
      const std::string w = text::lower(value);
      if (w == "series") p.load_connection = LoadConnection::Series;
      else if (w == "parallel") p.load_connection = LoadConnection::Parallel;
      else syntax(line, "load_connection must be series or parallel");
    } else if (key == "substrate.eps_r") {
      p.substrate.eps_r = scalar();
    } else if (key == "substrate.tan_delta") {
      p.substrate.tan_delta = scalar();
    } else if (key == "substrate.height_mm") {
      p.substrate.height_mm = scalar();
    } else if (key.rfind("patch.", 0) == 0) {
      long index = 0;
      const std::string_view idx = std::string_view(key).substr(6);
      const auto r = std::from_chars(idx.data(), idx.data() + idx.size(), index);
      if (r.ec != std::errc{} || r.ptr != idx.data() + idx.size()) {
        syntax(line, "patch key needs an integer index, got '" + key + "'");
      }
      const auto w = words.size() == 2 ? text::parse_double(words[0]) : std::nullopt;
      const auto l = words.size() == 2 ? text::parse_double(words[1]) : std::nullopt;
      if (!w || !l) syntax(line, "'" + key + "' needs '<width_mm> <length_mm>'");
      if (!patch.emplace(index, std::make_pair(*w, *l)).second) {
        syntax(line, "duplicate " + key);
      }
    } else {
      syntax(line, "unknown key '" + key + "'");
    }
  }

  if (!have_l0 || !have_cc) syntax(static_cast<int>(lines.size()), "l0_nH and cc_pF are required");
  if (patch.empty()) syntax(static_cast<int>(lines.size()), "at least one patch.<n> segment is required");
  for (const auto& [index, wl] : patch) {
    MicrostripLine seg{p.substrate, wl.first, wl.second};
    validate(seg);
    p.patch.push_back(seg);
  }
  p.diode.validate();
  p.placement.validate();
  if (!(p.load_ohm > 0.0)) throw Error(ErrorCode::InvalidValue, "load_ohm must be positive");
  return p;
}

Element build_jcasa_model(const JcasaParams& params, DiodeState d2, DiodeState d1) {
  DiodeModel m1 = params.diode;
  DiodeModel m2 = params.diode;
  m1.state = d1;
  m2.state = d2;
  const Element core = build_3rcsr(params.l0_nH, params.cc_pF, m1, m2, params.placement);
  const Element load = Element::resistor(params.load_ohm);
  const Element resonator = params.load_connection == LoadConnection::Series
                                ? Element::series({core, load})
                                : Element::parallel({core, load});
  return build_jcasa(params.patch, resonator);
}

}  // namespace fdrsense
