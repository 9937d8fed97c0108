#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
#
# vuca-sounder: virtual circular array channel sounding and estimation
# Copyright (C) 2026 The vuca-sounder authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
# Writes scenarios/atrium_demo.json: ten positions along the centre line of a
# rectangular atrium, line of sight plus first-order wall reflections (image sources).

import json
import math
import sys

C = 299792458.0
F0 = 14e9
WALL_LEFT = 5.0     # y = +5 m
WALL_RIGHT = -7.0   # y = -7 m
WALL_BACK = 48.0    # x = 48 m, behind the farthest Rx
WALL_FRONT = -4.0   # x = -4 m, behind the Tx
REFLECTION_LOSS_DB = {"left": 6.0, "right": 7.5, "back": 9.0, "front": 10.0}
ANTENNA_DB = 8.0    # G_Tx + G_Rx of the desk preset, carried as loss in the radio-channel PL


def fspl_db(d):
    return 20.0 * math.log10(4.0 * math.pi * d * F0 / C)


def path(src, rx, extra_db):
    dx, dy = src[0] - rx[0], src[1] - rx[1]
    length = math.hypot(dx, dy)
    az = math.degrees(math.atan2(dy, dx)) % 360.0
    return {"delay": length / C, "azimuth": round(az, 6),
            "power_db": round(-(fspl_db(length) + ANTENNA_DB + extra_db), 6)}


def scene(d):
    rx = (d, 0.0)
    images = [((0.0, 0.0), 0.0),
              ((0.0, 2 * WALL_LEFT), REFLECTION_LOSS_DB["left"]),
              ((0.0, 2 * WALL_RIGHT), REFLECTION_LOSS_DB["right"]),
              ((2 * WALL_BACK, 0.0), REFLECTION_LOSS_DB["back"]),
              ((2 * WALL_FRONT, 0.0), REFLECTION_LOSS_DB["front"])]
    paths = sorted((path(src, rx, loss) for src, loss in images), key=lambda p: p["delay"])
    return {"tx_rx_distance": d, "noise_floor": -150.0, "paths": paths}


def main():
    points = []
    for i in range(10):
        d = round(3.30 + 4.05 * i, 2)
        points.append({"label": "TP%d" % (i + 1), "scene": scene(d)})
    doc = {"schema": "vuca-1", "name": "atrium_demo",
           "config": {"preset": "desk_fr3"}, "mode": "ideal", "seed": 20240611,
           "test_points": points}
    out = sys.argv[1] if len(sys.argv) > 1 else "scenarios/atrium_demo.json"
    with open(out, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
