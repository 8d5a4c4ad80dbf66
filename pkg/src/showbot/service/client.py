"""Thin HTTP client used by the CLI.

Without a server URL the client mounts the app in-process over ASGI, so the
CLI always talks through the same request/response surface.
"""

from __future__ import annotations

import httpx


class ServiceClient:
    def __init__(self, url: str | None = None, live: bool = False):
        if url is None:
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .app import create_app
            app = create_app(live=live)
            self.client = TestClient(app)
            self.client.timeout = 300.0
        else:
            self.client = httpx.Client(base_url=url, timeout=300.0)

    def close(self):
        self.client.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def post(self, path: str, payload: dict) -> httpx.Response:
        return self.client.post(path, json=payload)

    def get(self, path: str) -> httpx.Response:
        return self.client.get(path)
