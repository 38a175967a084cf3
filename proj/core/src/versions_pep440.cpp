// PEP 440 version grammar for PyPI, mirroring the packaging library's
// normalization (case folding, alternate spellings, optional separators,
// implicit numbers) and its ordering key.

#include <algorithm>
#include <cctype>

#include "scabench/errors.hpp"
#include "versions_impl.hpp"

namespace scabench::detail {

namespace {

constexpr int kPreNone = 3;     // Infinity: final release, no pre segment
constexpr int kPreDevOnly = -1; // NegativeInfinity: X.Y.devN sorts below X.Ya0

[[noreturn]] void fail(const std::string& raw, const std::string& why) {
  throw_error(ErrorKind::Parse, "cannot parse PyPI version '" + raw + "': " + why);
}

struct Cursor {
  std::string_view s;
  size_t pos = 0;

  bool done() const { return pos >= s.size(); }
  char peek() const { return pos < s.size() ? s[pos] : '\0'; }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_sep() { return eat('-') || eat('_') || eat('.'); }
  std::string_view take_digits() {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
  }
  bool eat_word(std::string_view w) {
    if (s.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }
};

// Longest-match label lookup; returns the normalized spelling.
std::optional<std::string> eat_label(Cursor& c, std::initializer_list<std::pair<std::string_view, std::string_view>> table) {
  for (auto [spelling, normalized] : table)
    if (c.eat_word(spelling)) return std::string(normalized);
  return std::nullopt;
}

long long number_or_zero(Cursor& c, const std::string& raw) {
  c.eat_sep();
  auto digits = c.take_digits();
  if (digits.empty()) return 0;
  return parse_ll(digits, EcosystemId::PyPI, raw);
}

}  // namespace

std::strong_ordering compare_pep440(const Pep440Key& a, const Pep440Key& b) {
  if (auto c = a.epoch <=> b.epoch; c != 0) return c;
  if (auto c = a.release <=> b.release; c != 0) return c;
  if (auto c = a.pre_rank <=> b.pre_rank; c != 0) return c;
  if (a.pre_rank >= 0 && a.pre_rank < kPreNone)
    if (auto c = a.pre_num <=> b.pre_num; c != 0) return c;
  if (auto c = a.post <=> b.post; c != 0) return c;
  // Absent dev sorts above any dev number.
  if (a.has_dev != b.has_dev) return a.has_dev ? std::strong_ordering::less
                                               : std::strong_ordering::greater;
  if (a.has_dev)
    if (auto c = a.dev <=> b.dev; c != 0) return c;
  // Local segments: absent < present; numeric parts order above strings.
  const size_t n = std::min(a.local.size(), b.local.size());
  for (size_t i = 0; i < n; ++i) {
    const bool a_num = std::holds_alternative<long long>(a.local[i]);
    const bool b_num = std::holds_alternative<long long>(b.local[i]);
    if (a_num != b_num) return a_num ? std::strong_ordering::greater : std::strong_ordering::less;
    if (a_num) {
      if (auto c = std::get<long long>(a.local[i]) <=> std::get<long long>(b.local[i]); c != 0)
        return c;
    } else {
      if (auto c = std::get<std::string>(a.local[i]).compare(std::get<std::string>(b.local[i]));
          c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return a.local.size() <=> b.local.size();
}

ParsedVersion parse_pep440(const std::string& s) {
  std::string lowered;
  lowered.reserve(s.size());
  for (char ch : s) {
    if (ch == ' ' || ch == '\t') continue;
    lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (lowered.empty()) fail(s, "empty version");

  Cursor c{lowered};
  c.eat('v');

  ParsedVersion v;
  v.ecosystem = EcosystemId::PyPI;
  v.raw = s;
  Pep440Key key;

  // epoch
  {
    size_t mark = c.pos;
    auto digits = c.take_digits();
    if (!digits.empty() && c.eat('!')) {
      key.epoch = parse_ll(digits, EcosystemId::PyPI, s);
    } else {
      c.pos = mark;
    }
  }

  // release segments
  {
    auto digits = c.take_digits();
    if (digits.empty()) fail(s, "missing release segment");
    v.release_segments.push_back(parse_ll(digits, EcosystemId::PyPI, s));
    while (true) {
      size_t mark = c.pos;
      if (!c.eat('.')) break;
      auto more = c.take_digits();
      if (more.empty()) {
        c.pos = mark;
        break;
      }
      v.release_segments.push_back(parse_ll(more, EcosystemId::PyPI, s));
    }
  }

  // pre segment
  bool has_pre = false;
  std::string pre_label;
  long long pre_num = 0;
  {
    size_t mark = c.pos;
    c.eat_sep();
    if (auto label = eat_label(c, {{"alpha", "a"},
                                   {"a", "a"},
                                   {"beta", "b"},
                                   {"b", "b"},
                                   {"preview", "rc"},
                                   {"pre", "rc"},
                                   {"rc", "rc"},
                                   {"c", "rc"}})) {
      has_pre = true;
      pre_label = *label;
      pre_num = number_or_zero(c, s);
    } else {
      c.pos = mark;
    }
  }

  // post segment: ".postN" spellings or the implicit "-N" form
  bool has_post = false;
  long long post_num = 0;
  {
    size_t mark = c.pos;
    if (c.eat('-')) {
      auto digits = c.take_digits();
      if (!digits.empty()) {
        has_post = true;
        post_num = parse_ll(digits, EcosystemId::PyPI, s);
      } else {
        c.pos = mark;
      }
    }
    if (!has_post) {
      mark = c.pos;
      c.eat_sep();
      if (auto label = eat_label(c, {{"post", "post"}, {"rev", "post"}, {"r", "post"}})) {
        (void)label;
        has_post = true;
        post_num = number_or_zero(c, s);
      } else {
        c.pos = mark;
      }
    }
  }

  // dev segment
  bool has_dev = false;
  long long dev_num = 0;
  {
    size_t mark = c.pos;
    c.eat_sep();
    if (c.eat_word("dev")) {
      has_dev = true;
      dev_num = number_or_zero(c, s);
    } else {
      c.pos = mark;
    }
  }

  // local segment
  if (c.eat('+')) {
    if (c.done()) fail(s, "empty local segment");
    std::string part;
    auto flush = [&] {
      if (part.empty()) fail(s, "empty local segment part");
      if (all_digits(part))
        key.local.emplace_back(parse_ll(part, EcosystemId::PyPI, s));
      else
        key.local.emplace_back(part);
      part.clear();
    };
    while (!c.done()) {
      char ch = c.peek();
      if (ch == '-' || ch == '_' || ch == '.') {
        flush();
        ++c.pos;
      } else if (std::isalnum(static_cast<unsigned char>(ch))) {
        part.push_back(ch);
        ++c.pos;
      } else {
        fail(s, "bad character in local segment");
      }
    }
    flush();
  }

  if (!c.done()) fail(s, "unexpected trailing characters");

  key.release = v.release_segments;
  while (key.release.size() > 1 && key.release.back() == 0) key.release.pop_back();

  if (has_pre) {
    key.pre_rank = pre_label == "a" ? 0 : pre_label == "b" ? 1 : 2;
    key.pre_num = pre_num;
  } else if (!has_post && has_dev) {
    key.pre_rank = kPreDevOnly;
  } else {
    key.pre_rank = kPreNone;
  }
  key.post = has_post ? post_num : -1;
  key.has_dev = has_dev;
  key.dev = dev_num;

  if (has_pre) {
    v.prerelease.emplace_back(pre_label);
    v.prerelease.emplace_back(pre_num);
  }
  if (has_dev) {
    v.prerelease.emplace_back(std::string("dev"));
    v.prerelease.emplace_back(dev_num);
  }

  v.key = std::move(key);
  return v;
}

}  // namespace scabench::detail
