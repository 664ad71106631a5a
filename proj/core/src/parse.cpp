#include "geolab/parse.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace geolab {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::invalid_argument, what); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

// Parses a double at the start of [p, end); returns the position after it.
const char* number_at(const char* p, const char* end, double& out) {
  if (p != end && *p == '+') ++p;
  const auto res = std::from_chars(p, end, out);
  if (res.ec != std::errc()) return nullptr;
  return res.ptr;
}

double parse_real(const std::string& s) {
  const std::string t = trim(s);
  double x = 0.0;
  const char* end = t.data() + t.size();
  if (t.empty() || number_at(t.data(), end, x) != end) bad("expected a real number, got '" + s + "'");
  return x;
}

PlanarRegion custom_planar(const std::string& name) {
  if (name == "annulus-like")
    return PlanarRegion::predicate(name, [](cd z) { return std::abs(z) > 0.25 && std::abs(z) < 1.0; }, {0.5});
  if (name == "slit-disc")
    return PlanarRegion::predicate(
        name, [](cd z) { return std::abs(z) < 1.0 && !(z.imag() == 0.0 && z.real() <= 0.0); }, {0.5});
  bad("unknown custom region '" + name + "'");
}

BallRegion custom_ball(const std::string& name, int n) {
  if (name == "shell")
    return BallRegion::predicate(
        n, name, [](const CVec& x) { return x.norm() > 0.25 && x.norm() < 1.0; },
        {[n] {
          CVec c = CVec::Zero(n);
          c(0) = 0.6;
          return c;
        }()});
  bad("unknown custom ball region '" + name + "'");
}

std::size_t expect(const std::vector<std::string>& w, std::size_t lo, std::size_t hi) {
  if (w.size() < lo || w.size() > hi) bad("wrong number of arguments for region '" + w[0] + "'");
  return w.size();
}

PlanarRegion planar_from(const std::vector<std::string>& w) {
  const std::string& k = w[0];
  if (k == "disc") {
    expect(w, 1, 1);
    return PlanarRegion::whole_disc();
  }
  if (k == "euclid") {
    expect(w, 3, 3);
    return PlanarRegion::euclid_disc(parse_complex_pair(w[1]), parse_real(w[2]));
  }
  if (k == "hyperball") {
    expect(w, 3, 3);
    return PlanarRegion::hyper_ball(DiscPoint(parse_complex_pair(w[1])), parse_real(w[2]));
  }
  if (k == "horodisc") {
    if (expect(w, 2, 3) == 3) return PlanarRegion::horodisc(parse_real(w[1]), parse_complex_pair(w[2]));
    return PlanarRegion::horodisc(parse_real(w[1]));
  }
  if (k == "annulus") {
    expect(w, 2, 2);
    return PlanarRegion::annulus(parse_real(w[1]));
  }
  if (k == "crescent") {
    expect(w, 3, 3);
    return PlanarRegion::difference(PlanarRegion::horodisc(parse_real(w[1])),
                                    PlanarRegion::horodisc(parse_real(w[2])));
  }
  if (k == "custom") {
    expect(w, 2, 2);
    return custom_planar(w[1]);
  }
  bad("unknown region kind '" + k + "'");
}

bool is_planar_kind(const std::string& k) {
  return k == "disc" || k == "euclid" || k == "hyperball" || k == "horodisc" || k == "annulus" ||
         k == "crescent" || k == "custom";
}

}  // namespace

cd parse_complex_pair(const std::string& s) {
  const std::vector<std::string> parts = split(s, ',');
  if (parts.size() == 1) return parse_real(parts[0]);
  if (parts.size() != 2) bad("expected 're,im', got '" + s + "'");
  return {parse_real(parts[0]), parse_real(parts[1])};
}

cd parse_complex_literal(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) bad("empty complex literal");
  const char* p = t.data();
  const char* end = p + t.size();
  if (t == "i" || t == "+i") return {0.0, 1.0};
  if (t == "-i") return {0.0, -1.0};
  double first = 0.0;
  const char* q = number_at(p, end, first);
  if (!q) bad("malformed complex literal '" + s + "'");
  if (q == end) return first;
  if (*q == 'i' && q + 1 == end) return {0.0, first};
  if (*q != '+' && *q != '-') bad("malformed complex literal '" + s + "'");
  double second = 0.0;
  const char* r = nullptr;
  if (q + 2 == end && q[1] == 'i') {
    second = *q == '-' ? -1.0 : 1.0;
    r = q + 1;
  } else {
    r = number_at(q, end, second);
  }
  if (!r || r + 1 != end || *r != 'i') bad("malformed complex literal '" + s + "'");
  return {first, second};
}

CVec parse_complex_vector(const std::string& s) {
  const std::vector<std::string> parts = split(s, ',');
  if (parts.empty() || parts.size() > static_cast<std::size_t>(kMaxDim))
    bad("expected 1 to " + std::to_string(kMaxDim) + " coordinates, got '" + s + "'");
  CVec v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex_literal(parts[i]);
  return v;
}

CVec parse_ball_point(const std::string& s) {
  const CVec v = parse_complex_vector(s);
  if (!(v.norm() < 1.0)) bad("point '" + s + "' is not inside the unit ball");
  return v;
}

Region parse_region(const std::string& text, int ball_dim) {
  std::vector<std::string> w = words(text);
  if (w.empty()) bad("empty region description");
  if (w.size() == 2 && w[1] == "custom") std::swap(w[0], w[1]);
  if (ball_dim < 1 || ball_dim > kMaxDim) bad("ball dimension out of range");
  const std::string& k = w[0];
  if (is_planar_kind(k)) return planar_from(w);
  if (k == "ball") {
    expect(w, 1, 1);
    return BallRegion::whole_ball(ball_dim);
  }
  if (k == "kball") {
    expect(w, 3, 3);
    return BallRegion::kobayashi_ball(BallPoint(parse_ball_point(w[1])), parse_real(w[2]));
  }
  if (k == "horosphere") {
    expect(w, 2, 2);
    return BallRegion::horosphere(ball_dim, parse_real(w[1]));
  }
  if (k == "horodiff") {
    expect(w, 3, 3);
    return BallRegion::horosphere_difference(ball_dim, parse_real(w[1]), parse_real(w[2]));
  }
  if (k == "product") {
    if (w.size() < 2) bad("product needs a planar region");
    const std::vector<std::string> rest(w.begin() + 1, w.end());
    if (!is_planar_kind(rest[0])) bad("product needs a planar region, got '" + rest[0] + "'");
    return BallRegion::product_slice(ball_dim, planar_from(rest));
  }
  if (k == "custom-ball") {
    expect(w, 2, 2);
    return custom_ball(w[1], ball_dim);
  }
  bad("unknown region kind '" + k + "'");
}

std::string region_grammar_help() {
  return "Regions (planar centers as re,im; ball points as complex literals such as 0.3+0.2i,-0.1):\n"
         "  disc | euclid <c> <r> | hyperball <c> <r> | horodisc <R> [<p>] | annulus <r>\n"
         "  crescent <R_out> <R_in> | custom <annulus-like|slit-disc>\n"
         "  ball | kball <point> <r> | horosphere <R> | horodiff <R_out> <R_in>\n"
         "  product <planar region> | custom-ball <shell>\n";
}

}  // namespace geolab
