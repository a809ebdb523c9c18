"""Network transports for the session protocol.

Two duplex transports carry the same line-delimited records: a raw TCP
socket (one record per line) and a WebSocket (one record per text message)
for browser clients.  An optional static file server hosts the demo UI.
"""

from __future__ import annotations

import asyncio
import functools
import http.server
import threading
from pathlib import Path

from .config import DEFAULT_CONFIG, EngineConfig
from .protocol import SessionEndpoint
from .scenes import Scene


class SessionServer:
    def __init__(self, scene: Scene | None = None, cfg: EngineConfig = DEFAULT_CONFIG) -> None:
        self.scene = scene
        self.cfg = cfg
        self._counter = 0

    def _endpoint(self) -> SessionEndpoint:
        self._counter += 1
        return SessionEndpoint(session_id=f"s{self._counter}", cfg=self.cfg, scene=self.scene)

    async def handle_tcp(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter) -> None:
        endpoint = self._endpoint()
        try:
            while True:
                line = await reader.readline()
                if not line:
                    break
                for response in endpoint.handle_line(line.decode("utf-8", errors="replace")):
                    writer.write(response.encode("utf-8") + b"\n")
                await writer.drain()
        except (ConnectionResetError, BrokenPipeError):
            pass
        finally:
            writer.close()

    async def handle_websocket(self, websocket) -> None:
        endpoint = self._endpoint()
        async for message in websocket:
            if isinstance(message, bytes):
                message = message.decode("utf-8", errors="replace")
            for line in message.splitlines():
                for response in endpoint.handle_line(line):
                    await websocket.send(response)

    async def serve(
        self,
        host: str = "127.0.0.1",
        tcp_port: int = 8765,
        ws_port: int | None = 8766,
        ready: asyncio.Event | None = None,
    ) -> None:
        import websockets

        tcp_server = await asyncio.start_server(self.handle_tcp, host, tcp_port)
        if ws_port is not None:
            async with websockets.serve(self.handle_websocket, host, ws_port):
                if ready is not None:
                    ready.set()
                async with tcp_server:
                    await tcp_server.serve_forever()
        else:
            if ready is not None:
                ready.set()
            async with tcp_server:
                await tcp_server.serve_forever()


def start_static_server(directory: str | Path, host: str = "127.0.0.1", port: int = 8000) -> threading.Thread:
    """Serve the demo UI directory on a daemon thread."""
    handler = functools.partial(http.server.SimpleHTTPRequestHandler, directory=str(directory))
    httpd = http.server.ThreadingHTTPServer((host, port), handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    return thread
