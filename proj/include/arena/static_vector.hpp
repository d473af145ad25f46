#pragma once

#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>

namespace arena {

/// Fixed-capacity vector with inline storage. Used for every container that
/// lives inside a GameState so that copying a state never allocates.
template <typename T, std::size_t Capacity>
class StaticVector {
public:
    using value_type = T;
    using iterator = T*;
    using const_iterator = const T*;

    constexpr StaticVector() = default;

    [[nodiscard]] constexpr std::size_t size() const noexcept { return size_; }
    [[nodiscard]] constexpr bool empty() const noexcept { return size_ == 0; }
    [[nodiscard]] constexpr bool full() const noexcept { return size_ == Capacity; }
    [[nodiscard]] static constexpr std::size_t capacity() noexcept { return Capacity; }

    constexpr T& operator[](std::size_t i) noexcept {
        assert(i < size_);
        return data_[i];
    }
    constexpr const T& operator[](std::size_t i) const noexcept {
        assert(i < size_);
        return data_[i];
    }

    constexpr T& back() noexcept { return data_[size_ - 1]; }
    constexpr const T& back() const noexcept { return data_[size_ - 1]; }

    constexpr void push_back(const T& value) noexcept {
        assert(size_ < Capacity);
        data_[size_++] = value;
    }

    constexpr void pop_back() noexcept {
        assert(size_ > 0);
        --size_;
    }

    /// Removes element i, shifting the tail left (order preserving).
    constexpr void erase_at(std::size_t i) noexcept {
        assert(i < size_);
        for (std::size_t k = i + 1; k < size_; ++k) data_[k - 1] = data_[k];
        --size_;
    }

    constexpr void clear() noexcept { size_ = 0; }

    constexpr iterator begin() noexcept { return data_.data(); }
    constexpr iterator end() noexcept { return data_.data() + size_; }
    constexpr const_iterator begin() const noexcept { return data_.data(); }
    constexpr const_iterator end() const noexcept { return data_.data() + size_; }

    [[nodiscard]] std::span<const T> span() const noexcept { return {data_.data(), size_}; }

    friend constexpr bool operator==(const StaticVector& a, const StaticVector& b) noexcept {
        if (a.size_ != b.size_) return false;
        for (std::size_t i = 0; i < a.size_; ++i)
            if (!(a.data_[i] == b.data_[i])) return false;
        return true;
    }

private:
    std::array<T, Capacity> data_{};
    std::uint32_t size_ = 0;
};

}  // namespace arena
