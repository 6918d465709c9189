#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "bacf/image.hpp"

namespace bacf {

ImagePatch load_image(const std::filesystem::path& path) {
  cv::Mat raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (raw.empty()) throw IoError("cannot read image: " + path.string());
  cv::Mat img;
  if (raw.channels() == 1) {
    img = raw;
  } else if (raw.channels() == 3) {
    cv::cvtColor(raw, img, cv::COLOR_BGR2RGB);
  } else if (raw.channels() == 4) {
    cv::cvtColor(raw, img, cv::COLOR_BGRA2RGB);
  } else {
    throw IoError("unsupported channel count in " + path.string());
  }
  if (img.depth() == CV_16U) img.convertTo(img, CV_8U, 1.0 / 257.0);
  if (img.depth() != CV_8U) throw IoError("unsupported pixel depth in " + path.string());

  ImagePatch out(img.cols, img.rows, img.channels());
  for (int r = 0; r < img.rows; ++r) {
    const auto* row = img.ptr<unsigned char>(r);
    float* dst = out.data.data() + static_cast<std::size_t>(r) * img.cols * img.channels();
    for (int i = 0; i < img.cols * img.channels(); ++i) dst[i] = row[i];
  }
  return out;
}

void save_image(const std::filesystem::path& path, const ImagePatch& img) {
  cv::Mat mat(img.height, img.width, img.channels == 1 ? CV_8UC1 : CV_8UC3);
  for (int r = 0; r < img.height; ++r) {
    auto* row = mat.ptr<unsigned char>(r);
    const float* src = img.data.data() + static_cast<std::size_t>(r) * img.width * img.channels;
    for (int i = 0; i < img.width * img.channels; ++i)
      row[i] = cv::saturate_cast<unsigned char>(src[i]);
  }
  if (img.channels == 3) cv::cvtColor(mat, mat, cv::COLOR_RGB2BGR);
  if (!cv::imwrite(path.string(), mat)) throw IoError("cannot write image: " + path.string());
}

}  // namespace bacf
