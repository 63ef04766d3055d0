#include "thinning.hpp"

#include "error.hpp"
#include "image.hpp"

namespace segreg {

namespace {

// Neighborhood in the Zhang-Suen order p2..p9: N, NE, E, SE, S, SW, W, NW.
// Pixels outside the image count as background.
void neighborhood(const std::vector<std::uint8_t>& d, int w, int h, int x,
                  int y, int n[8]) {
    auto px = [&](int xx, int yy) -> int {
        if (xx < 0 || yy < 0 || xx >= w || yy >= h) return 0;
        return d[std::size_t(yy) * w + xx];
    };
    n[0] = px(x, y - 1);
    n[1] = px(x + 1, y - 1);
    n[2] = px(x + 1, y);
    n[3] = px(x + 1, y + 1);
    n[4] = px(x, y + 1);
    n[5] = px(x - 1, y + 1);
    n[6] = px(x - 1, y);
    n[7] = px(x - 1, y - 1);
}

int neighbor_count(const int n[8]) {
    return n[0] + n[1] + n[2] + n[3] + n[4] + n[5] + n[6] + n[7];
}

// Rutovitz crossing number: 0->1 transitions around the ring.
int transitions(const int n[8]) {
    int a = 0;
    for (int i = 0; i < 8; ++i)
        if (n[i] == 0 && n[(i + 1) % 8] == 1) ++a;
    return a;
}

}  // namespace

BinaryEdgeMap binarize(const EdgeMap& map, double threshold) {
    if (map.width < 1 || map.height < 1)
        raise(ErrorCode::EmptyImage, "cannot binarize an empty edge map");
    if (!(threshold > 0.0 && threshold < 1.0))
        raise(ErrorCode::InvalidArgument, "binarize threshold must be in (0,1)");
    BinaryEdgeMap out;
    out.width = map.width;
    out.height = map.height;
    out.data.resize(map.data.size());
    for (std::size_t i = 0; i < map.data.size(); ++i)
        out.data[i] = map.data[i] >= threshold ? 1 : 0;
    return out;
}

BinaryEdgeMap thin(const BinaryEdgeMap& map) {
    if (map.width < 1 || map.height < 1)
        raise(ErrorCode::EmptyImage, "cannot thin an empty map");

    BinaryEdgeMap out = map;
    const int w = out.width;
    const int h = out.height;
    std::vector<std::uint8_t>& d = out.data;

    std::vector<std::size_t> flagged;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int sub = 0; sub < 2; ++sub) {
            // Flags come from the image as it stood before this
            // subiteration.
            flagged.clear();
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    const std::size_t p = std::size_t(y) * w + x;
                    if (!d[p]) continue;
                    int n[8];
                    neighborhood(d, w, h, x, y, n);
                    const int b = neighbor_count(n);
                    if (b < 2 || b > 6) continue;
                    if (transitions(n) != 1) continue;
                    // p2=N, p4=E, p6=S, p8=W
                    if (sub == 0) {
                        if (n[0] && n[2] && n[4]) continue;
                        if (n[2] && n[4] && n[6]) continue;
                    } else {
                        if (n[0] && n[2] && n[6]) continue;
                        if (n[0] && n[4] && n[6]) continue;
                    }
                    flagged.push_back(p);
                }
            }
            // Apply in raster order, re-checking against the live image:
            // a deletion is only taken while it still removes a simple
            // contour pixel, which keeps every foreground component alive.
            for (const std::size_t p : flagged) {
                const int x = int(p % w);
                const int y = int(p / w);
                int n[8];
                neighborhood(d, w, h, x, y, n);
                const int b = neighbor_count(n);
                if (b < 2 || b > 6) continue;
                if (transitions(n) != 1) continue;
                d[p] = 0;
                changed = true;
            }
        }
    }
    return out;
}

void export_binary_map(const BinaryEdgeMap& map, const std::string& path) {
    if (map.width < 1 || map.height < 1)
        raise(ErrorCode::EmptyImage, "refusing to export an empty map");
    std::vector<std::uint8_t> bytes(map.data.size());
    for (std::size_t i = 0; i < map.data.size(); ++i)
        bytes[i] = map.data[i] ? 255 : 0;
    write_gray_png(map.width, map.height, bytes.data(), path);
}

}  // namespace segreg
