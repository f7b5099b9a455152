"""Regenerates tests/data/ fixtures from images bundled with scikit-image.

camera.png is CC0, astronaut.png is a NASA public-domain photo, and
horse.png is a public-domain silhouette.
"""
import pathlib

import numpy as np
from skimage import color, data, transform

out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data"
out.mkdir(parents=True, exist_ok=True)


def write_pgm(path, img):
    img = np.ascontiguousarray(img, dtype=np.uint8)
    h, w = img.shape
    path.write_bytes(b"P5\n%d %d\n255\n" % (w, h) + img.tobytes())


def write_pbm(path, bits):
    bits = np.asarray(bits, dtype=np.uint8)
    h, w = bits.shape
    packed = np.packbits(bits, axis=1)
    path.write_bytes(b"P4\n%d %d\n" % (w, h) + packed.tobytes())


write_pgm(out / "camera.pgm", data.camera())
astro = color.rgb2gray(data.astronaut())
write_pgm(out / "astronaut.pgm", np.round(astro * 255.0))

# horse.png is True on background; PBM 1 = black = silhouette.
horse = ~data.horse()
small = transform.resize(horse.astype(float), (64, 64), anti_aliasing=True)
write_pbm(out / "mark64.pbm", small > 0.5)
