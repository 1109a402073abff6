#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plsplit {

enum class ErrorCode : int {
  Ok = 0,
  Parse = 1,
  InvalidArgument,
  InvalidGluing,
  NotCovered,
  Disconnected,
  GeneratorExhausted,
  BoundViolated,
  SameSide,
  NotNormal,
  QuadConflict,
  WindowTooLarge,
  NotGeneralPosition,
  NotTransverse,
  NoEssentialIntersections,
  NonParallelCircles,
  NotMonotone,
  Unstable,
  BudgetExceeded,
  OneSided,
  OverlapUnresolved,
  SeedDegenerate,
  UnknownExample,
  Io,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Budget exhaustion is the only error class the CLI maps to exit status 2.
inline bool is_budget_error(ErrorCode c) {
  return c == ErrorCode::WindowTooLarge || c == ErrorCode::BudgetExceeded;
}

/// A permutation of the four vertices {0,1,2,3} of a tetrahedron.
class Perm4 {
 public:
  constexpr Perm4() : img_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d)
      : img_{static_cast<uint8_t>(a), static_cast<uint8_t>(b), static_cast<uint8_t>(c),
             static_cast<uint8_t>(d)} {}

  /// Parses the 4-character image string, e.g. "1023".
  static Perm4 parse(std::string_view s);

  constexpr int operator[](int i) const { return img_[i]; }
  Perm4 inverse() const {
    Perm4 out;
    for (int i = 0; i < 4; ++i) out.img_[img_[i]] = static_cast<uint8_t>(i);
    return out;
  }
  /// (this ∘ other)(i) = this[other[i]].
  Perm4 of(const Perm4& other) const {
    Perm4 out;
    for (int i = 0; i < 4; ++i) out.img_[i] = img_[other.img_[i]];
    return out;
  }
  int sign() const {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (img_[i] > img_[j]) ++inv;
    return (inv % 2 == 0) ? 1 : -1;
  }
  bool valid() const {
    int seen = 0;
    for (auto v : img_) {
      if (v > 3) return false;
      seen |= 1 << v;
    }
    return seen == 0xF;
  }
  std::string str() const {
    return {char('0' + img_[0]), char('0' + img_[1]), char('0' + img_[2]), char('0' + img_[3])};
  }
  friend bool operator==(const Perm4&, const Perm4&) = default;
  friend auto operator<=>(const Perm4&, const Perm4&) = default;

 private:
  std::array<uint8_t, 4> img_;
};

/// Tetrahedron edges in the fixed order (01, 02, 03, 12, 13, 23).
inline constexpr std::array<std::array<int, 2>, 6> kEdgeVertices{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int edge_index(int a, int b) {
  if (a > b) {
    int t = a;
    a = b;
    b = t;
  }
  if (a == 0) return b - 1;
  if (a == 1) return b + 1;
  return 5;
}

/// Vertices of face f (the face opposite vertex f), increasing.
constexpr std::array<int, 3> face_vertices(int f) {
  std::array<int, 3> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != f) out[k++] = v;
  return out;
}

/// The two faces containing tet edge e.
constexpr std::array<int, 2> faces_of_edge(int e) {
  std::array<int, 2> out{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != kEdgeVertices[e][0] && v != kEdgeVertices[e][1]) out[k++] = v;
  return out;
}

/// Quad type q in {0,1,2} separates {0, q+1} from the other two vertices.
constexpr int quad_partner(int q, int v) {
  // pairs: q0 {01|23}, q1 {02|13}, q2 {03|12}
  constexpr int table[3][4] = {{1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  return table[q][v];
}

/// The quad type pairing vertices a and b.
constexpr int quad_type_of_pair(int a, int b) {
  for (int q = 0; q < 3; ++q)
    if (quad_partner(q, a) == b) return q;
  return -1;
}

/// True if quad type q puts vertex v on the side containing vertex 0.
constexpr bool quad_zero_side(int q, int v) { return v == 0 || quad_partner(q, 0) == v; }

}  // namespace plsplit
