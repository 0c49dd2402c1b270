import io

import numpy as np
import pytest
from fastapi.testclient import TestClient

from lumenlift.chroma import chromaticity
from lumenlift.imgcore import decode_image, quantize, save_image
from lumenlift.service import create_app

from helpers import rand_image


def _png(image) -> bytes:
    buf = io.BytesIO()
    save_image(image, buf)
    return buf.getvalue()


@pytest.fixture()
def client():
    return TestClient(create_app())


@pytest.fixture()
def uploaded(client):
    rng = np.random.default_rng(100)
    png = _png(rand_image(rng, 40, 56, hi=0.3))
    response = client.post("/api/images", content=png)
    assert response.status_code == 201
    # hand back the image as the server decoded it (after quantization)
    return response.json()["id"], decode_image(io.BytesIO(png))


class TestUpload:
    def test_single_pixel(self, client):
        response = client.post(
            "/api/images", content=_png(np.ones((1, 1, 3), np.float32)))
        assert response.status_code == 201
        body = response.json()
        assert body["width"] == 1
        assert body["height"] == 1
        assert body["id"]

    def test_text_body_rejected(self, client):
        response = client.post("/api/images", content=b"plain text")
        assert response.status_code == 400

    def test_oversized_body_rejected(self):
        client = TestClient(create_app(upload_cap=1024))
        big = _png(np.zeros((64, 64, 3), np.float32)) + b"\0" * 2048
        response = client.post("/api/images", content=big)
        assert response.status_code == 413

    def test_lru_eviction(self, client):
        body = _png(np.full((4, 4, 3), 0.2, np.float32))
        ids = [client.post("/api/images", content=body).json()["id"]
               for _ in range(17)]
        assert client.get(f"/api/images/{ids[0]}/preview").status_code == 404
        assert client.get(f"/api/images/{ids[1]}/preview").status_code == 200

    def test_lru_access_refreshes(self, client):
        body = _png(np.full((4, 4, 3), 0.2, np.float32))
        ids = [client.post("/api/images", content=body).json()["id"]
               for _ in range(16)]
        # touching the oldest keeps it alive; the next upload evicts ids[1]
        assert client.get(f"/api/images/{ids[0]}/preview").status_code == 200
        client.post("/api/images", content=body)
        assert client.get(f"/api/images/{ids[0]}/preview").status_code == 200
        assert client.get(f"/api/images/{ids[1]}/preview").status_code == 404


class TestPreview:
    def test_repeat_requests_byte_identical(self, client, uploaded):
        image_id, _ = uploaded
        first = client.get(f"/api/images/{image_id}/preview")
        second = client.get(f"/api/images/{image_id}/preview")
        assert first.status_code == 200
        assert first.headers["content-type"] == "image/png"
        assert float(first.headers["x-elapsed-ms"]) > 0
        assert first.content == second.content

    def test_degenerate_params_give_chromaticity(self, client, uploaded):
        image_id, image = uploaded
        response = client.get(
            f"/api/images/{image_id}/preview",
            params={"th": 0, "alpha": 0, "gamma": 1})
        decoded = decode_image(io.BytesIO(response.content))
        expected = quantize(chromaticity(image)).astype(np.float32) / 255.0
        assert np.array_equal(decoded, expected)

    def test_out_of_range_alpha_names_field(self, client, uploaded):
        image_id, _ = uploaded
        response = client.get(
            f"/api/images/{image_id}/preview", params={"alpha": 5.0})
        assert response.status_code == 422
        assert "alpha" in response.text

    @pytest.mark.parametrize("params", [
        {"gamma": 0}, {"gamma": 2.0}, {"th": -1}, {"lv": 0},
    ])
    def test_out_of_range_rejected(self, client, uploaded, params):
        image_id, _ = uploaded
        response = client.get(
            f"/api/images/{image_id}/preview", params=params)
        assert response.status_code == 422
        assert next(iter(params)) in response.text

    def test_unknown_id(self, client):
        assert client.get("/api/images/missing/preview").status_code == 404

    def test_large_upload_previews_downscaled(self, client):
        rng = np.random.default_rng(101)
        image = rand_image(rng, 600, 800, hi=0.3)
        image_id = client.post(
            "/api/images", content=_png(image)).json()["id"]
        response = client.get(f"/api/images/{image_id}/preview")
        decoded = decode_image(io.BytesIO(response.content))
        assert max(decoded.shape[:2]) <= 640
        assert decoded.shape[:2] == (480, 640)

    def test_brightens_bundled_sample(self, client, dark_paths, golden):
        sample = next(p for p in dark_paths
                      if p.name == golden["preview"]["sample"])
        image_id = client.post(
            "/api/images", content=sample.read_bytes()).json()["id"]
        response = client.get(f"/api/images/{image_id}/preview")
        decoded = decode_image(io.BytesIO(response.content))
        from lumenlift.metrics import mean_luma
        out_luma = mean_luma(decoded)
        assert out_luma > golden["preview"]["input_mean_luma"]
        # quantization moves each sample at most 0.5/255 from the recorded run
        assert out_luma == pytest.approx(
            golden["preview"]["output_mean_luma"], abs=0.5 / 255 + 1e-4)


class TestEnhance:
    def test_default_config_matches_cli_bytes(self, client, uploaded, tmp_path):
        from lumenlift.cli import main
        image_id, image = uploaded
        response = client.post(f"/api/images/{image_id}/enhance", json={})
        assert response.status_code == 200

        in_path, out_path = tmp_path / "in.png", tmp_path / "out.png"
        save_image(image, in_path)
        assert main(["enhance", "-i", str(in_path), "-o", str(out_path)]) == 0
        assert response.content == out_path.read_bytes()

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_degenerate_config_is_chromaticity(self, client, uploaded):
        image_id, image = uploaded
        config = {"alphas": [0.0], "gamma": 1.0, "levels": 1, "denoise": False}
        response = client.post(f"/api/images/{image_id}/enhance", json=config)
        assert response.status_code == 200
        decoded = decode_image(io.BytesIO(response.content))
        expected = chromaticity(image)
        # enhance output sits within 1e-5 of chromaticity pre-quantization,
        # so the stored bytes differ by at most one quantization step
        assert float(np.abs(decoded - expected).max()) <= 1.0 / 255.0

    def test_malformed_json(self, client, uploaded):
        image_id, _ = uploaded
        response = client.post(
            f"/api/images/{image_id}/enhance",
            content=b"{not json",
            headers={"content-type": "application/json"})
        assert response.status_code == 422

    def test_invalid_config_names_field(self, client, uploaded):
        image_id, _ = uploaded
        response = client.post(
            f"/api/images/{image_id}/enhance", json={"alphas": [9.0]})
        assert response.status_code == 422
        assert "alphas" in response.text

    def test_excessive_levels_rejected(self, client, uploaded):
        image_id, _ = uploaded
        response = client.post(
            f"/api/images/{image_id}/enhance", json={"levels": 12})
        assert response.status_code == 422
        assert "levels" in response.text

    def test_unknown_id(self, client):
        assert client.post(
            "/api/images/missing/enhance", json={}).status_code == 404


class TestDefaults:
    def test_contract(self, client):
        body = client.get("/api/defaults").json()
        assert body["alphas"] == [0.15, 0.6, 0.85]
        assert body["gamma"] == 0.6
        assert body["th"] == 0.7
        assert body["lv"] == 1.5
        assert body["levels"] == 4
        assert body["ranges"]["gamma"] == [0.6, 1.0]
        assert body["ranges"]["alpha"] == [0.1, 3.5]
