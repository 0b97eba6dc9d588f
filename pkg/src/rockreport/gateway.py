"""Provider-agnostic multimodal text generation.

One ``generate`` contract covers every provider. The hosted model the tool
normally talks to is just a named remote configuration; the mock provider is
a deterministic stand-in (canned responses keyed by request digest, with a
synthesized fallback) so the whole report pipeline is reproducible offline.

API keys are read from the environment variable named in the provider
config at call time and are never stored, logged, or serialized.
"""
from __future__ import annotations

import base64
import hashlib
import io
import json
import os
import threading
import time
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol


@dataclass
class GenerationRequest:
    prompt: str
    images: list[tuple[str, bytes]] = field(default_factory=list)  # (media_type, bytes)
    max_output_tokens: int = 1024
    temperature: float = 0.0  # 0 for report generation: maximize reproducibility


@dataclass
class GenerationResponse:
    text: str
    provider_id: str
    latency_ms: float
    truncated: bool = False


@dataclass
class ProviderConfig:
    provider_id: str = "mock"
    endpoint_url: str = ""
    api_key_env_var: str = ""
    request_timeout_s: float = 30.0
    max_retries: int = 3
    rate_limit_per_min: int = 60
    max_images: int = 4
    max_image_edge_px: int = 2048
    canned_dir: str = ""

    @classmethod
    def from_file(cls, path: str | Path) -> "ProviderConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(**raw)


class GatewayError(Exception):
    """Base for provider failures; ``code`` is machine-readable."""
    code = "provider_error"
    retryable = False


class AuthError(GatewayError):
    code = "auth"


class LocalRateLimitError(GatewayError):
    code = "local_rate_limit"


class ProviderRateLimitError(GatewayError):
    code = "rate_limit"
    retryable = True


class ProviderTimeoutError(GatewayError):
    code = "timeout"
    retryable = True


class TransientProviderError(GatewayError):
    code = "transient"
    retryable = True


class MalformedResponseError(GatewayError):
    code = "malformed_response"


class RequestError(GatewayError):
    code = "bad_request"


# ---------------------------------------------------------------------------
# Rate limiting: process-global, per provider id, sliding one-minute window.

class RateLimiter:
    def __init__(self, per_minute: int, clock: Callable[[], float] = time.monotonic):
        self.per_minute = per_minute
        self.clock = clock
        self._calls: deque[float] = deque()
        self._lock = threading.Lock()

    def acquire(self) -> None:
        with self._lock:
            now = self.clock()
            while self._calls and now - self._calls[0] >= 60.0:
                self._calls.popleft()
            if len(self._calls) >= self.per_minute:
                raise LocalRateLimitError(
                    f"local rate limit of {self.per_minute}/min exhausted")
            self._calls.append(now)


_limiters: dict[str, RateLimiter] = {}
_limiters_lock = threading.Lock()


def limiter_for(config: ProviderConfig) -> RateLimiter:
    with _limiters_lock:
        limiter = _limiters.get(config.provider_id)
        if limiter is None or limiter.per_minute != config.rate_limit_per_min:
            limiter = RateLimiter(config.rate_limit_per_min)
            _limiters[config.provider_id] = limiter
        return limiter


def reset_limiters() -> None:
    """Test hook: drop all process-global limiter state."""
    with _limiters_lock:
        _limiters.clear()


# ---------------------------------------------------------------------------
# Providers

class Provider(Protocol):
    provider_id: str

    def send(self, request: GenerationRequest) -> GenerationResponse: ...


def request_digest(request: GenerationRequest) -> str:
    """Stable digest of prompt + image bytes; keys mock canned responses."""
    h = hashlib.sha256()
    h.update(request.prompt.encode("utf-8"))
    for media_type, data in request.images:
        h.update(b"\x00")
        h.update(media_type.encode("utf-8"))
        h.update(hashlib.sha256(data).digest())
    return h.hexdigest()


_FILLER_PARAGRAPHS = (
    "El macizo rocoso expuesto presenta una estructura masiva con fracturamiento "
    "moderado y discontinuidades subverticales de persistencia métrica. La calidad "
    "general se estima moderada, con bloques estables y meteorización superficial "
    "incipiente que no compromete la integridad del talud.",
    "La muestra corresponde a una roca de textura compacta y grano medio, con "
    "mineralogía homogénea y escasas microfisuras. Se anticipa una resistencia "
    "mecánica alta y un comportamiento competente frente a cargas, sin debilidades "
    "estructurales relevantes a escala de la muestra.",
    "Los resultados del ensayo indican una roca de dureza media a alta, con una "
    "resistencia a la compresión adecuada para usos constructivos convencionales. "
    "Se recomienda complementar con ensayos de laboratorio sobre testigos para "
    "confirmar el módulo de deformación estimado.",
    "La integración de las observaciones de campo sugiere un contexto geológico "
    "coherente entre los puntos de muestreo, con variaciones locales en el grado "
    "de fracturamiento que explican las diferencias de calidad del macizo rocoso "
    "registradas en las clasificaciones geomecánicas.",
    "El patrón estructural observado, dominado por familias de juntas de rumbo "
    "consistente, condiciona la estabilidad de los taludes naturales y excavados. "
    "Las orientaciones relativas entre discontinuidades y talud resultan en "
    "condiciones de estabilidad que van de parcialmente estables a estables.",
    "Las correlaciones entre afloramientos permiten interpretar una historia "
    "geológica común, con procesos de deformación que imprimieron las estructuras "
    "principales y una meteorización diferencial asociada a la litología y a la "
    "exposición de cada punto de muestreo.",
)

_OBJECTIVES_TEXT = (
    "Caracterizar las condiciones geomecánicas del sector de estudio a partir de "
    "las observaciones de campo y los ensayos realizados sobre los afloramientos.\n\n"
    "Determinar la calidad del macizo rocoso en cada punto de muestreo mediante "
    "las clasificaciones geomecánicas aplicadas a los datos estructurales.\n\n"
    "Evaluar la influencia de las discontinuidades sobre la estabilidad de los "
    "taludes observados y señalar los riesgos geotécnicos asociados."
)

_CONCLUSIONS_TEXT = (
    "1. Las familias de discontinuidades registradas controlan el comportamiento "
    "mecánico del macizo rocoso y definen los bloques potencialmente inestables.\n"
    "2. La calidad del macizo, evaluada mediante la clasificación geomecánica, se "
    "ubica en rangos medios, coherentes con el grado de fracturamiento observado.\n"
    "3. La resistencia estimada con el esclerómetro resulta adecuada para los usos "
    "previstos, aunque se recomienda verificación con ensayos de laboratorio.\n"
    "4. Las orientaciones relativas entre juntas y taludes no evidencian mecanismos "
    "de falla inminentes, si bien ameritan seguimiento en los sectores más fracturados.\n"
    "5. La integración de datos de campo y descripciones automatizadas agiliza la "
    "elaboración del informe sin sustituir el criterio del especialista."
)


def _synthesize_text(request: GenerationRequest, digest: str) -> str:
    """Deterministic, section-shaped canned text for the mock provider."""
    prompt = request.prompt
    if prompt.startswith("Eres un redactor técnico"):
        return _OBJECTIVES_TEXT
    if "conclusiones numeradas" in prompt:
        return _CONCLUSIONS_TEXT
    index = int(digest[:8], 16) % len(_FILLER_PARAGRAPHS)
    return _FILLER_PARAGRAPHS[index]


class MockProvider:
    """Offline stand-in: same request -> same response, no network ever.

    Looks up ``canned_dir/<digest>.txt`` first; otherwise synthesizes a
    deterministic section-shaped text. ``script`` injects failures for retry
    tests: a list of exceptions/strings consumed one send() at a time.
    """

    provider_id = "mock"

    def __init__(self, canned_dir: str | Path | None = None,
                 script: list[Exception | str] | None = None):
        self.canned_dir = Path(canned_dir) if canned_dir else None
        self.script = list(script) if script else None
        self.calls = 0

    def send(self, request: GenerationRequest) -> GenerationResponse:
        self.calls += 1
        if self.script is not None and self.script:
            step = self.script.pop(0)
            if isinstance(step, Exception):
                raise step
            return GenerationResponse(text=step, provider_id=self.provider_id,
                                      latency_ms=0.0)
        digest = request_digest(request)
        if self.canned_dir is not None:
            canned = self.canned_dir / f"{digest}.txt"
            if canned.exists():
                return GenerationResponse(text=canned.read_text(encoding="utf-8"),
                                          provider_id=self.provider_id, latency_ms=0.0)
        return GenerationResponse(text=_synthesize_text(request, digest),
                                  provider_id=self.provider_id, latency_ms=0.0)


def downscale_image(media_type: str, data: bytes, max_edge_px: int) -> tuple[str, bytes]:
    """Re-encode an image whose longest edge exceeds the payload budget."""
    from PIL import Image

    with Image.open(io.BytesIO(data)) as img:
        width, height = img.size
        if max(width, height) <= max_edge_px:
            return media_type, data
        scale = max_edge_px / max(width, height)
        resized = img.resize((max(1, round(width * scale)), max(1, round(height * scale))))
        out = io.BytesIO()
        if media_type == "image/png":
            resized.save(out, format="PNG")
            return media_type, out.getvalue()
        if resized.mode not in ("RGB", "L"):
            resized = resized.convert("RGB")
        resized.save(out, format="JPEG", quality=90)
        return "image/jpeg", out.getvalue()


class HttpProvider:
    """Generic JSON-over-HTTPS adapter for remote model endpoints.

    Payload: {"prompt", "images": [{"media_type", "data": base64}],
    "max_output_tokens", "temperature"}; expects {"text": ..., "truncated"?}.
    """

    def __init__(self, config: ProviderConfig):
        if not config.endpoint_url:
            raise RequestError("remote provider requires endpoint_url")
        self.config = config
        self.provider_id = config.provider_id

    def _api_key(self) -> str:
        name = self.config.api_key_env_var
        if not name:
            raise AuthError("provider config names no API key environment variable")
        key = os.environ.get(name, "")
        if not key:
            raise AuthError(f"environment variable {name} is not set")
        return key

    def send(self, request: GenerationRequest) -> GenerationResponse:
        import requests

        key = self._api_key()  # resolved before any network I/O
        images = [downscale_image(mt, data, self.config.max_image_edge_px)
                  for mt, data in request.images]
        payload = {
            "prompt": request.prompt,
            "images": [{"media_type": mt, "data": base64.b64encode(data).decode("ascii")}
                       for mt, data in images],
            "max_output_tokens": request.max_output_tokens,
            "temperature": request.temperature,
        }
        started = time.monotonic()
        try:
            response = requests.post(
                self.config.endpoint_url,
                json=payload,
                headers={"Authorization": f"Bearer {key}"},
                timeout=self.config.request_timeout_s,
            )
        except requests.Timeout as exc:
            raise ProviderTimeoutError(str(exc)) from exc
        except requests.RequestException as exc:
            raise TransientProviderError(str(exc)) from exc

        if response.status_code in (401, 403):
            raise AuthError(f"provider rejected credentials (HTTP {response.status_code})")
        if response.status_code == 429:
            raise ProviderRateLimitError("provider rate limit hit")
        if response.status_code >= 500:
            raise TransientProviderError(f"provider HTTP {response.status_code}")
        if response.status_code != 200:
            raise MalformedResponseError(f"unexpected provider HTTP {response.status_code}")
        try:
            body = response.json()
            text = body["text"]
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedResponseError(f"provider payload missing text: {exc}") from exc
        return GenerationResponse(
            text=text,
            provider_id=self.provider_id,
            latency_ms=(time.monotonic() - started) * 1000.0,
            truncated=bool(body.get("truncated", False)),
        )


def provider_for(config: ProviderConfig) -> Provider:
    if config.provider_id == "mock" or not config.endpoint_url:
        return MockProvider(canned_dir=config.canned_dir or None)
    return HttpProvider(config)


BACKOFF_BASE_S = 0.5


def generate(request: GenerationRequest, config: ProviderConfig,
             provider: Provider | None = None,
             sleep: Callable[[float], None] = time.sleep) -> GenerationResponse:
    """Send one generation request, with rate limiting and retries.

    Transient failures retry up to ``config.max_retries`` extra attempts with
    exponential (non-decreasing) backoff; auth and malformed-payload errors
    never retry.
    """
    if not request.prompt:
        raise RequestError("prompt must be non-empty")
    if len(request.images) > config.max_images:
        raise RequestError(
            f"too many images: {len(request.images)} > provider limit {config.max_images}")

    prov = provider or provider_for(config)
    limiter_for(config).acquire()

    attempts = config.max_retries + 1
    last: GatewayError | None = None
    for attempt in range(attempts):
        started = time.monotonic()
        try:
            response = prov.send(request)
        except GatewayError as exc:
            if not exc.retryable or attempt == attempts - 1:
                raise
            last = exc
            sleep(BACKOFF_BASE_S * (2 ** attempt))
            continue
        if response.latency_ms == 0.0:
            response.latency_ms = (time.monotonic() - started) * 1000.0
        return response
    raise last if last is not None else TransientProviderError("generation failed")


class Gateway:
    """A provider bound to its config; what the report pipeline talks to."""

    def __init__(self, config: ProviderConfig | None = None,
                 provider: Provider | None = None,
                 sleep: Callable[[float], None] = time.sleep):
        self.config = config or ProviderConfig()
        self.provider = provider or provider_for(self.config)
        self._sleep = sleep

    def generate(self, request: GenerationRequest) -> GenerationResponse:
        return generate(request, self.config, provider=self.provider, sleep=self._sleep)


def mock_gateway(canned_dir: str | Path | None = None) -> Gateway:
    config = ProviderConfig(provider_id="mock", canned_dir=str(canned_dir) if canned_dir else "")
    return Gateway(config=config, provider=MockProvider(canned_dir=canned_dir))
