#!/usr/bin/env python3
"""Build a small grayscale image corpus from sample images bundled with
scikit-image, scikit-learn and matplotlib.

Every source is converted to 8-bit luma, downscaled so its longer side is at
most --max-side, and cut into up to --crops-per-image square crops taken on a
fixed grid. Output names are "<source>_<n>.png", so the corpus is identical on
every run.
"""

import argparse
import pathlib
import sys

import numpy as np
from PIL import Image

SKIMAGE_SOURCES = [
    "astronaut", "brick", "camera", "cell", "chelsea", "coffee", "coins",
    "grass", "gravel", "hubble_deep_field", "immunohistochemistry", "moon",
    "page", "retina", "rocket", "text",
]


def load_sources():
    import skimage.data

    for name in SKIMAGE_SOURCES:
        loader = getattr(skimage.data, name, None)
        if loader is None:
            continue
        try:
            yield name, np.asarray(loader())
        except Exception as exc:  # missing optional data file
            print(f"skipping {name}: {exc}", file=sys.stderr)
    try:
        left, right, _ = skimage.data.stereo_motorcycle()
        yield "motorcycle_left", np.asarray(left)
        yield "motorcycle_right", np.asarray(right)
    except Exception as exc:
        print(f"skipping stereo_motorcycle: {exc}", file=sys.stderr)
    try:
        from sklearn.datasets import load_sample_image

        for name in ("china", "flower"):
            yield name, np.asarray(load_sample_image(f"{name}.jpg"))
    except Exception as exc:
        print(f"skipping sklearn samples: {exc}", file=sys.stderr)
    try:
        import matplotlib.cbook

        with matplotlib.cbook.get_sample_data("grace_hopper.jpg") as fh:
            yield "grace_hopper", np.asarray(Image.open(fh).convert("RGB"))
    except Exception as exc:
        print(f"skipping matplotlib sample: {exc}", file=sys.stderr)


def to_gray(array):
    if array.dtype != np.uint8:
        array = array.astype(np.float64)
        lo, hi = float(array.min()), float(array.max())
        array = np.zeros_like(array) if hi <= lo else (array - lo) / (hi - lo) * 255.0
        array = np.clip(np.rint(array), 0, 255).astype(np.uint8)
    image = Image.fromarray(array)
    if image.mode in ("RGBA", "LA", "P"):
        image = image.convert("RGB")
    return image.convert("L")


def crops(image, size, count):
    width, height = image.size
    if width < size or height < size:
        return []
    cols = max(1, width // size)
    rows = max(1, height // size)
    boxes = []
    for r in range(rows):
        for c in range(cols):
            x = c * (width - size) // max(1, cols - 1) if cols > 1 else (width - size) // 2
            y = r * (height - size) // max(1, rows - 1) if rows > 1 else (height - size) // 2
            boxes.append((x, y, x + size, y + size))
    # Spread the selection over the grid rather than taking the first row.
    step = max(1, len(boxes) // count)
    return [image.crop(b) for b in boxes[::step][:count]]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("output", type=pathlib.Path)
    parser.add_argument("--max-side", type=int, default=512)
    parser.add_argument("--crop", type=int, default=128)
    parser.add_argument("--crops-per-image", type=int, default=4)
    args = parser.parse_args()

    args.output.mkdir(parents=True, exist_ok=True)
    written = 0
    for name, array in load_sources():
        image = to_gray(array)
        scale = args.max_side / max(image.size)
        if scale < 1.0:
            size = (max(1, round(image.size[0] * scale)), max(1, round(image.size[1] * scale)))
            image = image.resize(size, Image.LANCZOS)
        for index, crop in enumerate(crops(image, args.crop, args.crops_per_image)):
            crop.save(args.output / f"{name}_{index}.png", optimize=False)
            written += 1
    print(f"wrote {written} images to {args.output}")
    return 0 if written else 1


if __name__ == "__main__":
    sys.exit(main())
