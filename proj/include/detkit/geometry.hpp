#pragma once

namespace detkit {

// Axis-aligned box, pixel units, corner form.
struct Box {
    double x_min = 0;
    double y_min = 0;
    double x_max = 0;
    double y_max = 0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }

    bool operator==(const Box&) const = default;
};

} // namespace detkit
