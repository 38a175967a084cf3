// Maven version ordering per the canonical ComparableVersion rules:
// tokens split on '.', '-' and digit/letter transitions, sublists opened on
// '-' and transitions, trailing null items trimmed, and the qualifier order
// alpha < beta < milestone < rc < snapshot < "" (release) < sp < others.

#include <algorithm>
#include <cctype>

#include "scabench/errors.hpp"
#include "versions_impl.hpp"

namespace scabench::detail {

namespace {

const char* kQualifiers[] = {"alpha", "beta", "milestone", "rc", "snapshot", "", "sp"};
constexpr int kQualifierCount = 7;
constexpr int kReleaseIndex = 5;  // index of "" in kQualifiers

std::string comparable_qualifier(const std::string& q) {
  for (int i = 0; i < kQualifierCount; ++i)
    if (q == kQualifiers[i]) return std::to_string(i);
  return std::to_string(kQualifierCount) + "-" + q;
}

std::strong_ordering cmp_str(const std::string& a, const std::string& b) {
  int c = a.compare(b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

MavenItem make_int(std::string_view digits) {
  MavenItem item;
  item.kind = MavenItem::Kind::Int;
  size_t nz = digits.find_first_not_of('0');
  item.digits = nz == std::string_view::npos ? "0" : std::string(digits.substr(nz));
  return item;
}

MavenItem make_string(std::string value, bool followed_by_digit) {
  if (followed_by_digit && value.size() == 1) {
    switch (value[0]) {
      case 'a': value = "alpha"; break;
      case 'b': value = "beta"; break;
      case 'm': value = "milestone"; break;
      default: break;
    }
  }
  if (value == "ga" || value == "final" || value == "release") value.clear();
  if (value == "cr") value = "rc";
  MavenItem item;
  item.kind = MavenItem::Kind::Str;
  item.text = std::move(value);
  return item;
}

MavenItem parse_item(bool is_digit, std::string_view token, bool followed_by_digit) {
  if (is_digit) return make_int(token);
  return make_string(std::string(token), followed_by_digit);
}

// Numeric compare on normalized digit strings: length, then lexicographic.
std::strong_ordering cmp_digits(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  return cmp_str(a, b);
}

void normalize(MavenItem& list) {
  auto& items = list.list;
  for (int i = static_cast<int>(items.size()) - 1; i >= 0; --i) {
    if (items[static_cast<size_t>(i)].is_null()) {
      items.erase(items.begin() + i);
    } else if (items[static_cast<size_t>(i)].kind != MavenItem::Kind::List) {
      break;
    }
  }
}

}  // namespace

bool MavenItem::is_null() const {
  switch (kind) {
    case Kind::Int: return digits == "0";
    case Kind::Str: return comparable_qualifier(text) == std::to_string(kReleaseIndex);
    case Kind::List: return list.empty();
  }
  return false;
}

std::strong_ordering compare_maven_items(const MavenItem* a, const MavenItem* b) {
  if (a == nullptr) {
    if (b == nullptr) return std::strong_ordering::equal;
    auto c = compare_maven_items(b, nullptr);
    return c == std::strong_ordering::less    ? std::strong_ordering::greater
           : c == std::strong_ordering::greater ? std::strong_ordering::less
                                                : std::strong_ordering::equal;
  }
  switch (a->kind) {
    case MavenItem::Kind::Int:
      if (b == nullptr)
        return a->digits == "0" ? std::strong_ordering::equal : std::strong_ordering::greater;
      switch (b->kind) {
        case MavenItem::Kind::Int: return cmp_digits(a->digits, b->digits);
        case MavenItem::Kind::Str: return std::strong_ordering::greater;
        case MavenItem::Kind::List: return std::strong_ordering::greater;
      }
      break;
    case MavenItem::Kind::Str:
      if (b == nullptr)
        return cmp_str(comparable_qualifier(a->text), std::to_string(kReleaseIndex));
      switch (b->kind) {
        case MavenItem::Kind::Int: return std::strong_ordering::less;
        case MavenItem::Kind::Str:
          return cmp_str(comparable_qualifier(a->text), comparable_qualifier(b->text));
        case MavenItem::Kind::List: return std::strong_ordering::less;
      }
      break;
    case MavenItem::Kind::List:
      if (b == nullptr) {
        if (a->list.empty()) return std::strong_ordering::equal;
        return compare_maven_items(&a->list.front(), nullptr);
      }
      switch (b->kind) {
        case MavenItem::Kind::Int: return std::strong_ordering::less;
        case MavenItem::Kind::Str: return std::strong_ordering::greater;
        case MavenItem::Kind::List: {
          size_t i = 0, j = 0;
          while (i < a->list.size() || j < b->list.size()) {
            const MavenItem* l = i < a->list.size() ? &a->list[i] : nullptr;
            const MavenItem* r = j < b->list.size() ? &b->list[j] : nullptr;
            auto c = compare_maven_items(l, r);
            if (c != 0) return c;
            ++i;
            ++j;
          }
          return std::strong_ordering::equal;
        }
      }
      break;
  }
  return std::strong_ordering::equal;
}

bool maven_has_prerelease_qualifier(const MavenItem& item) {
  if (item.kind == MavenItem::Kind::Str) {
    const std::string& q = item.text;
    return q == "alpha" || q == "beta" || q == "milestone" || q == "rc" || q == "snapshot";
  }
  if (item.kind == MavenItem::Kind::List)
    return std::any_of(item.list.begin(), item.list.end(), maven_has_prerelease_qualifier);
  return false;
}

ParsedVersion parse_maven(const std::string& s) {
  std::string version;
  version.reserve(s.size());
  for (char ch : s) {
    if (ch == ' ' || ch == '\t') continue;
    version.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (version.empty())
    throw_error(ErrorKind::Parse, "cannot parse Maven version '" + s + "': empty version");

  ParsedVersion parsed;
  parsed.ecosystem = EcosystemId::Maven;
  parsed.raw = s;

  MavenKey key;
  key.root.kind = MavenItem::Kind::List;

  // Stack of open sublists, addressed by path to stay valid across growth.
  std::vector<std::vector<size_t>> stack;
  stack.push_back({});
  std::vector<size_t> current;

  auto list_at = [&key](const std::vector<size_t>& path) -> MavenItem& {
    MavenItem* item = &key.root;
    for (size_t idx : path) item = &item->list[idx];
    return *item;
  };
  auto add_item = [&](MavenItem item) { list_at(current).list.push_back(std::move(item)); };
  auto open_sublist = [&] {
    MavenItem sub;
    sub.kind = MavenItem::Kind::List;
    auto& parent = list_at(current);
    parent.list.push_back(std::move(sub));
    current.push_back(parent.list.size() - 1);
    stack.push_back(current);
  };

  bool is_digit = false;
  size_t start = 0;
  for (size_t i = 0; i < version.size(); ++i) {
    const char ch = version[i];
    if (ch == '.') {
      if (i == start)
        add_item(make_int("0"));
      else
        add_item(parse_item(is_digit, std::string_view(version).substr(start, i - start), false));
      start = i + 1;
    } else if (ch == '-') {
      if (i == start)
        add_item(make_int("0"));
      else
        add_item(parse_item(is_digit, std::string_view(version).substr(start, i - start), false));
      start = i + 1;
      open_sublist();
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      if (!is_digit && i > start) {
        add_item(make_string(version.substr(start, i - start), true));
        start = i;
        open_sublist();
      }
      is_digit = true;
    } else {
      if (is_digit && i > start) {
        add_item(parse_item(true, std::string_view(version).substr(start, i - start), false));
        start = i;
        open_sublist();
      }
      is_digit = false;
    }
  }
  if (version.size() > start)
    add_item(parse_item(is_digit, std::string_view(version).substr(start), false));

  while (!stack.empty()) {
    normalize(list_at(stack.back()));
    stack.pop_back();
  }

  for (const auto& item : key.root.list) {
    if (item.kind != MavenItem::Kind::Int) break;
    if (item.digits.size() <= 18) parsed.release_segments.push_back(std::stoll(item.digits));
  }
  // Display view of prerelease qualifiers, depth-first.
  struct Walk {
    static void run(const MavenItem& item, std::vector<TagId>& out) {
      if (item.kind == MavenItem::Kind::Str) {
        const std::string& q = item.text;
        if (q == "alpha" || q == "beta" || q == "milestone" || q == "rc" || q == "snapshot")
          out.emplace_back(q);
      } else if (item.kind == MavenItem::Kind::List) {
        for (const auto& sub : item.list) run(sub, out);
      }
    }
  };
  Walk::run(key.root, parsed.prerelease);

  parsed.key = std::move(key);
  return parsed;
}

}  // namespace scabench::detail
