"""Checksum metadata embedded in rendered images, and how to read it back.

The value is a single string "name=sha256 name=sha256 ..." stored under the
PNG text keyword ``ldos-inputs`` or the SVG Dublin-Core ``source`` element.
"""

import struct
import xml.etree.ElementTree as ET
import zlib

CHECKSUM_KEY = "ldos-inputs"

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
_DC_SOURCE = "{http://purl.org/dc/elements/1.1/}source"


def checksum_string(entries):
    """entries: dict basename -> hex digest."""
    return " ".join(f"{name}={digest}" for name, digest in sorted(entries.items()))


def parse_checksum_string(value):
    out = {}
    for pair in value.split():
        if "=" in pair:
            name, digest = pair.split("=", 1)
            out[name] = digest
    return out


def _png_text_chunks(path):
    with open(path, "rb") as f:
        if f.read(8) != _PNG_MAGIC:
            raise ValueError(f"{path}: not a PNG file")
        while True:
            head = f.read(8)
            if len(head) < 8:
                return
            length, ctype = struct.unpack(">I4s", head)
            data = f.read(length)
            f.read(4)  # CRC
            if ctype == b"tEXt":
                key, _, val = data.partition(b"\x00")
                yield key.decode("latin-1"), val.decode("latin-1")
            elif ctype == b"zTXt":
                key, _, rest = data.partition(b"\x00")
                yield key.decode("latin-1"), zlib.decompress(rest[1:]).decode("latin-1")
            elif ctype == b"iTXt":
                key, _, rest = data.partition(b"\x00")
                comp_flag = rest[0]
                body = rest[2:]
                body = body.split(b"\x00", 2)[2]  # skip language tag + translated key
                if comp_flag:
                    body = zlib.decompress(body)
                yield key.decode("latin-1"), body.decode("utf-8")
            elif ctype == b"IEND":
                return


def image_checksums(path):
    """Recover the input-checksum dict embedded by the figure writer."""
    if path.lower().endswith(".svg"):
        root = ET.parse(path).getroot()
        for el in root.iter(_DC_SOURCE):
            if el.text:
                return parse_checksum_string(el.text)
        raise ValueError(f"{path}: no checksum metadata found")
    for key, value in _png_text_chunks(path):
        if key == CHECKSUM_KEY:
            return parse_checksum_string(value)
    raise ValueError(f"{path}: no checksum metadata found")
