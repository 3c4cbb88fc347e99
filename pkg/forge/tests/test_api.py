from django.test import SimpleTestCase
from rest_framework.test import APIClient

SL3 = {"p": 5, "matrix": [["2", "-1"], ["-1", "2"]], "parity": "00"}
BRJ3 = {"p": 3, "matrix": [["0", "-1"], ["-2", "1"]], "parity": "11"}


class BuildApiTestCase(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()
        self.url = "/api/build/"

    def test_build(self):
        res = self.client.post(self.url, {"spec": BRJ3}, format="json")
        self.assertEqual(res.status_code, 200)
        self.assertEqual(res.data["sdim"], {"even": 10, "odd": 8})
        self.assertEqual(res.data["verdict"], "finite")
        self.assertIn("hw_odd", res.data)

    def test_parity_as_words(self):
        payload = {"spec": dict(SL3, parity="ev ev"), "structure": False}
        res = self.client.post(self.url, payload, format="json")
        self.assertEqual(res.status_code, 200)
        self.assertNotIn("derived", res.data)

    def test_invalid_matrix(self):
        payload = {"spec": {"p": 3, "matrix": [["2", "0"], ["-1", "2"]], "parity": "00"}}
        res = self.client.post(self.url, payload, format="json")
        self.assertEqual(res.status_code, 400)
        self.assertIn("detail", res.data)

    def test_one_sided_zeros_on_request(self):
        spec = {"p": 3, "matrix": [["2", "0"], ["-1", "2"]], "parity": "00", "symmetric_zeros": False}
        res = self.client.post(self.url, {"spec": spec, "caps": {"height_cap": 6}, "structure": False}, format="json")
        self.assertEqual(res.status_code, 200)
        self.assertIn(res.data["verdict"], ("finite", "exceeded_cap"))

    def test_caps_above_the_configured_bound(self):
        payload = {"spec": SL3, "caps": {"dim_cap": 10 ** 9}}
        res = self.client.post(self.url, payload, format="json")
        self.assertEqual(res.status_code, 400)

    def test_capped_build_is_reported(self):
        payload = {"spec": {"p": 5, "matrix": [["2", "-2"], ["-2", "2"]], "parity": "00"}, "caps": {"height_cap": 6}}
        res = self.client.post(self.url, payload, format="json")
        self.assertEqual(res.status_code, 200)
        self.assertEqual(res.data["verdict"], "exceeded_cap")


class OrbitApiTestCase(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()
        self.url = "/api/orbit/"

    def test_orbit(self):
        res = self.client.post(self.url, {"spec": BRJ3, "verify_sdim": False}, format="json")
        self.assertEqual(res.status_code, 200)
        self.assertEqual(len(res.data["members"]), 3)
        self.assertEqual(len(res.data["rectangle"]), 3)

    def test_orbit_needs_a_finite_build(self):
        payload = {"spec": {"p": 5, "matrix": [["2", "-2"], ["-2", "2"]], "parity": "00"}, "caps": {"height_cap": 6}}
        res = self.client.post(self.url, payload, format="json")
        self.assertEqual(res.status_code, 400)
        self.assertIn("sdim", res.data)


class DynkinApiTestCase(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()
        self.url = "/api/dynkin/"

    def test_text(self):
        res = self.client.post(self.url, {"spec": SL3, "symmetries": True}, format="json")
        self.assertEqual(res.status_code, 200)
        self.assertEqual(res.data["diagram"], "O-1-O")
        self.assertEqual(res.data["symmetries"], [[2, 1]])

    def test_dot(self):
        res = self.client.post(self.url, {"spec": SL3, "format": "dot"}, format="json")
        self.assertEqual(res.status_code, 200)
        self.assertEqual(res["Content-Type"], "text/vnd.graphviz")
        self.assertTrue(res.content.startswith(b"digraph dynkin"))


class ReadOnlyApiTestCase(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_expectations(self):
        res = self.client.get("/api/expectations/")
        self.assertEqual(res.status_code, 200)
        families = {(row["family"], row["p"]) for row in res.data}
        self.assertIn(("brj(2;5)", 5), families)

    def test_health(self):
        res = self.client.get("/health/")
        self.assertEqual(res.status_code, 200)
        self.assertEqual(res.data["status"], "ok")
