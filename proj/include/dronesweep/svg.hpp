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

#ifndef DRONESWEEP_SVG_HPP
#define DRONESWEEP_SVG_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "dronesweep/geom.hpp"

namespace dronesweep {
namespace svg {

// Minimal SVG emission for debugging output: world coordinates are
// mapped to a fixed-width viewport with the y axis flipped.
class Document {
 public:
  Document(geom::Point2 world_lo, geom::Point2 world_hi,
           double width_px = 800.0);

  void polygon(const std::vector<geom::Point2>& vertices,
               const std::string& stroke, const std::string& fill = "none");
  void polyline(const std::vector<geom::Point2>& points,
                const std::string& stroke);
  void circle(const geom::Point2& center, double radius_world,
              const std::string& stroke, const std::string& fill = "none");
  void write(std::ostream& out) const;

 private:
  geom::Point2 to_px(const geom::Point2& p) const;

  geom::Point2 lo_, hi_;
  double width_, height_, scale_;
  std::vector<std::string> body_;
};

}  // namespace svg
}  // namespace dronesweep

#endif  // DRONESWEEP_SVG_HPP
