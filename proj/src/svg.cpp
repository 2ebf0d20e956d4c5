// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dronesweep/svg.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace dronesweep {
namespace svg {

Document::Document(geom::Point2 world_lo, geom::Point2 world_hi,
                   double width_px)
    : lo_(world_lo), hi_(world_hi), width_(width_px) {
  const double wx = hi_.x - lo_.x;
  const double wy = hi_.y - lo_.y;
  if (!(wx > 0.0) || !(wy > 0.0) || !(width_px > 0.0)) {
    throw std::invalid_argument("svg::Document: degenerate viewport");
  }
  scale_ = width_ / wx;
  height_ = wy * scale_;
}

geom::Point2 Document::to_px(const geom::Point2& p) const {
  return {(p.x - lo_.x) * scale_, height_ - (p.y - lo_.y) * scale_};
}

void Document::polygon(const std::vector<geom::Point2>& vertices,
                       const std::string& stroke, const std::string& fill) {
  std::string pts;
  char buf[64];
  for (const auto& v : vertices) {
    const auto p = to_px(v);
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", p.x, p.y);
    pts += buf;
  }
  body_.push_back("<polygon points=\"" + pts + "\" stroke=\"" + stroke +
                  "\" fill=\"" + fill + "\" stroke-width=\"1\"/>");
}

void Document::polyline(const std::vector<geom::Point2>& points,
                        const std::string& stroke) {
  std::string pts;
  char buf[64];
  for (const auto& v : points) {
    const auto p = to_px(v);
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", p.x, p.y);
    pts += buf;
  }
  body_.push_back("<polyline points=\"" + pts + "\" stroke=\"" + stroke +
                  "\" fill=\"none\" stroke-width=\"1\"/>");
}

void Document::circle(const geom::Point2& center, double radius_world,
                      const std::string& stroke, const std::string& fill) {
  const auto p = to_px(center);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" stroke=\"%s\" "
                "fill=\"%s\" stroke-width=\"1\"/>",
                p.x, p.y, radius_world * scale_, stroke.c_str(), fill.c_str());
  body_.push_back(buf);
}

void Document::write(std::ostream& out) const {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                width_, height_, width_, height_);
  out << buf;
  for (const auto& e : body_) out << "  " << e << "\n";
  out << "</svg>\n";
}

}  // namespace svg
}  // namespace dronesweep
