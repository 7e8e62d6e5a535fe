import json
import re

import pytest

from gridtrace import (
    AffineTransform,
    BitRaster,
    Polygon,
    TimingRecord,
    assemble_polygons,
    bernoulli,
    detect,
    form_rings,
    write_geojson,
    write_timing_csv,
    write_wkt,
)


def pipeline(rows, transform=None):
    d = detect(BitRaster.from_strings(rows))
    if transform is None:
        return form_rings(d)
    return form_rings(d, transform)


class TestGeojson:
    def test_single_pixel_rings_mode(self):
        _, world = pipeline(["1"])
        doc = json.loads(write_geojson(world, mode="rings"))
        assert doc["type"] == "FeatureCollection"
        assert len(doc["features"]) == 1
        geom = doc["features"][0]["geometry"]
        assert geom["type"] == "LineString"
        assert geom["coordinates"] == [
            [0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0], [0.0, 0.0],
        ]

    def test_empty_collection_exact_text(self):
        assert (
            write_geojson([], polygons=[], mode="polygons")
            == '{"type": "FeatureCollection", "features": []}'
        )

    def test_polygon_with_hole(self):
        grid, world = pipeline(["111", "101", "111"])
        doc = json.loads(write_geojson(world, assemble_polygons(grid)))
        assert len(doc["features"]) == 1
        rings = doc["features"][0]["geometry"]["coordinates"]
        assert len(rings) == 2
        assert rings[0] == [[0.0, 0.0], [0.0, 3.0], [3.0, 3.0], [3.0, 0.0], [0.0, 0.0]]
        assert rings[1] == [[1.0, 1.0], [2.0, 1.0], [2.0, 2.0], [1.0, 2.0], [1.0, 1.0]]

    def test_every_ring_closes(self):
        r = bernoulli(16, 16, 0.5, 4)
        grid, world = form_rings(detect(r))
        doc = json.loads(write_geojson(world, assemble_polygons(grid)))
        for feature in doc["features"]:
            for ring in feature["geometry"]["coordinates"]:
                assert ring[0] == ring[-1]

    def test_open_ring_rejected(self):
        with pytest.raises(ValueError, match="closed"):
            write_geojson([[(0.0, 0.0), (0.0, 1.0)]], mode="rings")

    def test_polygons_mode_needs_grouping(self):
        with pytest.raises(ValueError):
            write_geojson([], mode="polygons")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            write_geojson([], polygons=[], mode="blobs")

    def test_crs_foreign_member(self):
        doc = json.loads(write_geojson([], polygons=[], crs="EPSG:32633"))
        assert doc["crs"] == "EPSG:32633"

    def test_properties_present(self):
        _, world = pipeline(["1"])
        doc = json.loads(write_geojson(world, mode="rings"))
        assert doc["features"][0]["properties"] == {}


class TestWkt:
    def test_single_pixel_golden(self):
        grid, world = pipeline(["1"])
        assert (
            write_wkt(world, assemble_polygons(grid))
            == "POLYGON ((0 0, 0 1, 1 1, 1 0, 0 0))"
        )

    def test_two_disjoint_shells(self):
        grid, world = pipeline(["10", "01"])
        assert write_wkt(world, assemble_polygons(grid)) == (
            "MULTIPOLYGON (((0 0, 0 1, 1 1, 1 0, 0 0)), "
            "((1 1, 1 2, 2 2, 2 1, 1 1)))"
        )

    def test_empty(self):
        assert write_wkt([], []) == "MULTIPOLYGON EMPTY"

    def test_polygon_with_hole(self):
        grid, world = pipeline(["111", "101", "111"])
        assert write_wkt(world, assemble_polygons(grid)) == (
            "POLYGON ((0 0, 0 3, 3 3, 3 0, 0 0), (1 1, 2 1, 2 2, 1 2, 1 1))"
        )

    def test_non_integer_coordinates(self):
        tr = AffineTransform(0.5, 0.0, 0.0, 0.0, 0.5, 0.0)
        grid, world = pipeline(["1"], tr)
        assert (
            write_wkt(world, assemble_polygons(grid))
            == "POLYGON ((0 0, 0 0.5, 0.5 0.5, 0.5 0, 0 0))"
        )

    def test_open_ring_rejected(self):
        with pytest.raises(ValueError, match="closed"):
            write_wkt([[(0.0, 0.0), (1.0, 0.0)]], [Polygon(0, [])])

    def test_round_trip_recovers_world_coordinates(self):
        grid, world = pipeline(["110", "010", "011"])
        text = write_wkt(world, assemble_polygons(grid))
        parsed = [
            [tuple(float(n) for n in pt.split()) for pt in ring.split(", ")]
            for ring in re.findall(r"\(([^()]+)\)", text)
        ]
        emitted = sorted(tuple(map(tuple, r.tolist())) for r in world)
        assert sorted(tuple(r) for r in parsed) == emitted


class TestTimingCsv:
    def test_header_only(self):
        assert write_timing_csv([]) == "size,p,trials,mean_seconds,stddev_seconds\n"

    def test_single_record(self):
        text = write_timing_csv([TimingRecord(1000, 0.5, 100, 0.25, 0.01)])
        assert text.splitlines() == [
            "size,p,trials,mean_seconds,stddev_seconds",
            "1000,0.5,100,0.25,0.01",
        ]

    def test_full_grid_line_count(self):
        records = [
            TimingRecord(size, i / 10, 3, 0.1, 0.0)
            for size in (250, 500, 1000)
            for i in range(11)
        ]
        assert len(write_timing_csv(records).splitlines()) == 34
