/*
 * polycurv: discrete curvatures and rigidity solvers for bordered
 * polyhedral surfaces.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

namespace polycurv {

/**
 * Minimal SVG writer: collects circles and segments in model space and
 * renders into a fixed 1000-unit viewBox with autoscaling and 6-decimal
 * coordinates, so identical inputs give byte-identical files.
 */
class SvgWriter {
public:
    void add_circle(double cx, double cy, double r, const char* stroke = "black")
    {
        circles_.push_back({cx, cy, r, stroke});
        grow(cx - r, cy - r);
        grow(cx + r, cy + r);
    }

    void add_segment(double x1, double y1, double x2, double y2,
                     const char* stroke = "#888888")
    {
        segments_.push_back({x1, y1, x2, y2, stroke});
        grow(x1, y1);
        grow(x2, y2);
    }

    std::string render() const
    {
        const double w = std::max(maxx_ - minx_, 1e-12);
        const double hgt = std::max(maxy_ - miny_, 1e-12);
        const double scale = 960.0 / std::max(w, hgt);
        const auto X = [&](double x) { return 20.0 + (x - minx_) * scale; };
        const auto Y = [&](double y) { return 20.0 + (maxy_ - y) * scale; };
        std::string out =
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
        char buf[256];
        for (const auto& s : segments_) {
            std::snprintf(buf, sizeof buf,
                          "  <line x1=\"%.6f\" y1=\"%.6f\" x2=\"%.6f\" y2=\"%.6f\" "
                          "stroke=\"%s\" stroke-width=\"1\"/>\n",
                          X(s.x1), Y(s.y1), X(s.x2), Y(s.y2), s.stroke.c_str());
            out += buf;
        }
        for (const auto& c : circles_) {
            std::snprintf(buf, sizeof buf,
                          "  <circle cx=\"%.6f\" cy=\"%.6f\" r=\"%.6f\" fill=\"none\" "
                          "stroke=\"%s\" stroke-width=\"1.5\"/>\n",
                          X(c.cx), Y(c.cy), c.r * scale, c.stroke.c_str());
            out += buf;
        }
        out += "</svg>\n";
        return out;
    }

private:
    struct Circle {
        double cx, cy, r;
        std::string stroke;
    };
    struct Segment {
        double x1, y1, x2, y2;
        std::string stroke;
    };
    std::vector<Circle> circles_;
    std::vector<Segment> segments_;
    double minx_ = 1e300, miny_ = 1e300, maxx_ = -1e300, maxy_ = -1e300;

    void grow(double x, double y)
    {
        minx_ = std::min(minx_, x);
        miny_ = std::min(miny_, y);
        maxx_ = std::max(maxx_, x);
        maxy_ = std::max(maxy_, y);
    }
};

}  // namespace polycurv
