#include "texshape/error.hpp"
#include "texshape/stimuli/generators.hpp"

namespace texshape {

ImageBuffer fill_silhouette(const ImageBuffer& silhouette, const ImageBuffer& texture) {
  require_grey(silhouette, "fill_silhouette");
  if (texture.empty() || silhouette.width() != texture.width() ||
      silhouette.height() != texture.height()) {
    throw Error(Errc::invalid_argument, "fill_silhouette: silhouette and texture sizes differ");
  }
  ImageBuffer out(texture.width(), texture.height(), texture.channels(), 1.0f);
  const int ch = texture.channels();
  for (int y = 0; y < texture.height(); ++y) {
    for (int x = 0; x < texture.width(); ++x) {
      if (silhouette.at(x, y) >= 0.5f) continue;
      for (int c = 0; c < ch; ++c) out.at(x, y, c) = texture.at(x, y, c);
    }
  }
  return out;
}

}  // namespace texshape
