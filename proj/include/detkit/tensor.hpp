#pragma once

#include <cstddef>
#include <vector>

namespace detkit {

struct Shape {
    int c = 0;
    int h = 0;
    int w = 0;

    bool operator==(const Shape&) const = default;
    long long elements() const { return 1LL * c * h * w; }
};

// Channel-first row-major single-precision tensor: data[ch*h*w + y*w + x].
struct Tensor {
    Shape shape;
    std::vector<float> data;

    Tensor() = default;
    Tensor(int c, int h, int w) : shape{c, h, w}, data(size_t(1) * c * h * w, 0.0f) {}
    explicit Tensor(Shape s) : Tensor(s.c, s.h, s.w) {}

    float* plane(int ch) { return data.data() + size_t(ch) * shape.h * shape.w; }
    const float* plane(int ch) const { return data.data() + size_t(ch) * shape.h * shape.w; }

    float& at(int ch, int y, int x) { return data[(size_t(ch) * shape.h + y) * shape.w + x]; }
    float at(int ch, int y, int x) const { return data[(size_t(ch) * shape.h + y) * shape.w + x]; }
};

} // namespace detkit
