#ifndef ADAPTUI_VEC3_HPP
#define ADAPTUI_VEC3_HPP

#include <cmath>

namespace adaptui {

struct Vec3 {
    double x{};
    double y{};
    double z{};

    friend constexpr auto operator+(Vec3 a, Vec3 b) noexcept -> Vec3 { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr auto operator-(Vec3 a, Vec3 b) noexcept -> Vec3 { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr auto operator*(double s, Vec3 v) noexcept -> Vec3 { return {s * v.x, s * v.y, s * v.z}; }
    friend constexpr auto operator*(Vec3 v, double s) noexcept -> Vec3 { return s * v; }
    friend constexpr auto operator==(Vec3 const&, Vec3 const&) noexcept -> bool = default;

    [[nodiscard]] constexpr auto operator[](int axis) const noexcept -> double
    {
        return axis == 0 ? x : (axis == 1 ? y : z);
    }
    constexpr auto operator[](int axis) noexcept -> double&
    {
        return axis == 0 ? x : (axis == 1 ? y : z);
    }
};

constexpr auto dot(Vec3 a, Vec3 b) noexcept -> double { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr auto cross(Vec3 a, Vec3 b) noexcept -> Vec3
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline auto norm(Vec3 v) noexcept -> double { return std::sqrt(dot(v, v)); }

inline auto distance(Vec3 a, Vec3 b) noexcept -> double { return norm(a - b); }

/// Caller guarantees a non-zero vector.
inline auto normalized(Vec3 v) noexcept -> Vec3 { return (1.0 / norm(v)) * v; }

/// Axis-aligned box, bounds inclusive.
struct Box {
    Vec3 lower;
    Vec3 upper;

    [[nodiscard]] constexpr auto contains(Vec3 p) const noexcept -> bool
    {
        for (int i = 0; i < 3; ++i) {
            if (p[i] < lower[i] || p[i] > upper[i]) {
                return false;
            }
        }
        return true;
    }

    [[nodiscard]] constexpr auto clamp(Vec3 p) const noexcept -> Vec3
    {
        for (int i = 0; i < 3; ++i) {
            p[i] = p[i] < lower[i] ? lower[i] : (p[i] > upper[i] ? upper[i] : p[i]);
        }
        return p;
    }

    [[nodiscard]] constexpr auto extent(int axis) const noexcept -> double { return upper[axis] - lower[axis]; }

    friend constexpr auto operator==(Box const&, Box const&) noexcept -> bool = default;
};

} // namespace adaptui

#endif
