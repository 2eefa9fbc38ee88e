#include "ratlab/certified_real.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ratlab/error.hpp"

namespace ratlab {

namespace {

unsigned width_bits(const BigRational& width) {
  // floor(-log2(width)) for 0 < width < 1: largest b with width * 2^b <= 1.
  const BigInt& num = width.get_num();
  const BigInt& den = width.get_den();
  const long nb = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const long db = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  long b = db - nb;
  if (b < 0) return 0;
  // Adjust by at most one: check num * 2^b <= den.
  BigInt scaled = num;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(b));
  while (b > 0 && scaled > den) {
    --b;
    mpz_fdiv_q_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 1);
  }
  BigInt next = scaled * 2;
  while (next <= den) {
    ++b;
    scaled = next;
    next = scaled * 2;
  }
  return static_cast<unsigned>(b);
}

}  // namespace

CertifiedReal::CertifiedReal(RationalInterval interval)
    : interval_(std::move(interval)), bits_(width_bits(interval_.width())) {}

CertifiedReal CertifiedReal::from_interval(BigRational lo, BigRational hi) {
  if (!(sgn(lo) > 0 && lo < hi && hi < 1)) {
    throw Error(ErrorKind::DomainViolation,
                "CertifiedReal requires 0 < lo < hi < 1 (rational inputs are rejected)");
  }
  return CertifiedReal(RationalInterval(std::move(lo), std::move(hi)));
}

CertifiedReal CertifiedReal::from_decimal(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos || text.find('.', dot + 1) != std::string_view::npos) {
    throw Error(ErrorKind::InvalidArgument, "decimal literal needs exactly one '.'");
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i != dot && !std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw Error(ErrorKind::InvalidArgument, "decimal literal: unexpected character");
    }
  }
  const std::string_view frac = text.substr(dot + 1);
  if (frac.empty()) throw Error(ErrorKind::InvalidArgument, "decimal literal: no digits after '.'");

  BigInt digits(std::string(frac), 10);
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  BigRational lo(digits, scale);
  BigRational hi(digits + 1, scale);
  lo.canonicalize();
  hi.canonicalize();
  return from_interval(std::move(lo), std::move(hi));
}

CertifiedReal CertifiedReal::from_decimal_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::InvalidArgument, "cannot open constant file " + path.string());
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    return from_decimal(line);
  }
  throw Error(ErrorKind::InvalidArgument, "constant file has no value line: " + path.string());
}

CertifiedReal sample_irrational(std::uint64_t seed, unsigned bits) {
  if (bits < 64) throw Error(ErrorKind::InvalidArgument, "sample_irrational: bits must be >= 64");
  std::mt19937_64 rng(seed);
  const unsigned words = (bits + 63) / 64;
  const unsigned tail = bits - 64 * (words - 1);  // bits used from the last word

  BigInt top;
  mpz_ui_pow_ui(top.get_mpz_t(), 2, bits);
  const BigInt max_p = top - 2;
  for (;;) {
    BigInt p = 0;
    for (unsigned w = 0; w < words; ++w) {
      std::uint64_t word = rng();
      unsigned take = 64;
      if (w + 1 == words) {
        take = tail;
        if (take < 64) word >>= (64 - take);
      }
      mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), take);
      BigInt part;
      mpz_import(part.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      p += part;
    }
    if (sgn(p) > 0 && p <= max_p) {
      BigRational lo(p, top);
      BigRational hi(p + 1, top);
      lo.canonicalize();
      hi.canonicalize();
      return CertifiedReal::from_interval(std::move(lo), std::move(hi));
    }
  }
}

CertifiedReal golden_ratio_conjugate(unsigned bits) {
  if (bits < 2) throw Error(ErrorKind::InvalidArgument, "golden_ratio_conjugate: bits >= 2");
  // s = floor(sqrt(5) 2^(bits-1)), so (sqrt5 - 1)/2 lies in
  // [(s - 2^(bits-1)) / 2^bits, (s + 1 - 2^(bits-1)) / 2^bits].
  BigInt half;
  mpz_ui_pow_ui(half.get_mpz_t(), 2, bits - 1);
  BigInt radicand = 5 * half * half;
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), radicand.get_mpz_t());
  const BigInt scale = 2 * half;
  BigRational lo(s - half, scale);
  BigRational hi(s + 1 - half, scale);
  lo.canonicalize();
  hi.canonicalize();
  return CertifiedReal::from_interval(std::move(lo), std::move(hi));
}

}  // namespace ratlab
