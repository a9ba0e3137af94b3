#include "dsp/partitions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dsp/errors.hpp"

namespace dsp {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int b : parts_)
    if (b <= 0) throw std::invalid_argument("partition parts must be positive");
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::weight() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

MultiplicityVector::MultiplicityVector(std::vector<int> mults) {
  for (int m : mults) {
    if (m < 0) throw std::invalid_argument("negative multiplicity");
    if (m > 0) mults_.push_back(m);
  }
  std::sort(mults_.begin(), mults_.end(), std::greater<>());
}

int MultiplicityVector::size() const {
  return std::accumulate(mults_.begin(), mults_.end(), 0);
}

Jnf::Jnf(std::vector<Partition> slots) : slots_(std::move(slots)) {
  for (const auto& s : slots_)
    if (s.empty()) throw std::invalid_argument("JNF slot with no blocks");
  std::sort(slots_.begin(), slots_.end(), std::greater<>());
}

Jnf Jnf::diagonal(const MultiplicityVector& mv) {
  std::vector<Partition> slots;
  for (int m : mv.mults()) slots.emplace_back(std::vector<int>(m, 1));
  return Jnf(std::move(slots));
}

int Jnf::size() const {
  int n = 0;
  for (const auto& s : slots_) n += s.weight();
  return n;
}

bool Jnf::is_diagonal() const {
  return std::all_of(slots_.begin(), slots_.end(),
                     [](const Partition& s) { return s.largest() == 1; });
}

Partition dual_partition(const Partition& p) {
  std::vector<int> dual(p.largest(), 0);
  for (int b : p.parts())
    for (int k = 0; k < b; ++k) ++dual[k];
  return Partition(std::move(dual));
}

MultiplicityVector corresponding_diagonal(const Jnf& j) {
  std::vector<int> mults;
  for (const auto& slot : j.slots()) {
    const auto d = dual_partition(slot);
    mults.insert(mults.end(), d.parts().begin(), d.parts().end());
  }
  return MultiplicityVector(std::move(mults));
}

int r_of_jnf(const Jnf& j) {
  std::size_t most = 0;
  for (const auto& s : j.slots()) most = std::max(most, s.length());
  return j.size() - static_cast<int>(most);
}

int d_of_jnf(const Jnf& j) {
  const int n = j.size();
  int centralizer = 0;
  for (const auto& s : j.slots())
    for (int a : s.parts())
      for (int b : s.parts()) centralizer += std::min(a, b);
  return n * n - centralizer;
}

bool is_regular(const Jnf& j) {
  return std::all_of(j.slots().begin(), j.slots().end(),
                     [](const Partition& s) { return s.length() == 1; });
}

std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  if (n <= 0) return out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int b = std::min(remaining, cap); b >= 1; --b) {
      cur.push_back(b);
      rec(remaining - b, b);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

std::vector<Jnf> all_jnfs(int n) {
  std::vector<Partition> pool;
  for (int w = n; w >= 1; --w)
    for (auto& p : all_partitions(w)) pool.push_back(std::move(p));
  std::sort(pool.begin(), pool.end(), std::greater<>());

  std::vector<Jnf> out;
  std::vector<Partition> cur;
  std::function<void(std::size_t, int)> rec = [&](std::size_t from,
                                                  int remaining) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      if (pool[i].weight() > remaining) continue;
      cur.push_back(pool[i]);
      rec(i, remaining - pool[i].weight());
      cur.pop_back();
    }
  };
  rec(0, n);
  return out;
}

std::vector<Jnf> corresponding_jnfs(const MultiplicityVector& mv, int bound) {
  const int n = mv.size();
  if (n > bound)
    throw BoundExceeded("corresponding_jnfs: size " + std::to_string(n) +
                        " exceeds bound " + std::to_string(bound));
  std::vector<Jnf> out;
  for (auto& j : all_jnfs(n))
    if (corresponding_diagonal(j) == mv) out.push_back(std::move(j));
  return out;
}

std::string to_string(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.parts().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p.parts()[i]);
  }
  return s + ")";
}

std::string to_string(const MultiplicityVector& mv) {
  return to_string(Partition(mv.mults()));
}

std::string to_string(const Jnf& j) {
  std::string s = "{";
  for (std::size_t k = 0; k < j.slots().size(); ++k) {
    if (k) s += ",";
    s += "{";
    const auto& parts = j.slots()[k].parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts[i]);
    }
    s += "}";
  }
  return s + "}";
}

Partition parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](char c) {
                                return c == ' ' || c == '(' || c == ')' ||
                                       c == '{' || c == '}';
                              }),
               item.end());
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad integer '" + item + "'");
    }
    if (used != item.size() || v <= 0)
      throw ValidationError("bad block size '" + item + "'");
    parts.push_back(v);
  }
  if (parts.empty()) throw ValidationError("empty partition '" + text + "'");
  return Partition(std::move(parts));
}

Jnf parse_jnf(const std::string& text) {
  std::vector<Partition> slots;
  std::string item;
  // Innermost brace groups are slots, so "{{3,2},{7,6,1}}" reads like "3,2;7,6,1".
  std::string flat;
  for (char c : text) {
    if (c == '}') flat += ';';
    else if (c != '{') flat += c;
  }
  std::istringstream is(flat);
  while (std::getline(is, item, ';')) {
    const auto first = item.find_first_of("0123456789");
    if (first == std::string::npos) continue;
    slots.push_back(parse_partition(item.substr(first, item.find_last_of("0123456789") - first + 1)));
  }
  if (slots.empty()) throw ValidationError("empty JNF '" + text + "'");
  return Jnf(std::move(slots));
}

std::ostream& operator<<(std::ostream& os, const Partition& p) {
  return os << to_string(p);
}
std::ostream& operator<<(std::ostream& os, const MultiplicityVector& mv) {
  return os << to_string(mv);
}
std::ostream& operator<<(std::ostream& os, const Jnf& j) {
  return os << to_string(j);
}

}  // namespace dsp
