#include "mcf/rational.hpp"

#include <cctype>

namespace mcf {

Rat makeRat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string ratToString(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::optional<Rat> ratFromString(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::string num = s, den = "1";
  if (auto slash = s.find('/'); slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  auto wellFormed = [](const std::string& t, bool signOk) {
    if (t.empty()) return false;
    size_t i = (signOk && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (!wellFormed(num, true) || !wellFormed(den, false)) return std::nullopt;
  mpz_class n(num), d(den);
  if (d == 0) return std::nullopt;
  Rat r(n);
  r /= Rat(d);
  return r;
}

bool ratIsInteger(const Rat& r) { return r.get_den() == 1; }

long ratFloorLong(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q.get_si();
}

Rat ratAbs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace mcf
