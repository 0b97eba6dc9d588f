"""HTTP API powering the web UI and batch clients.

Request/response bodies for the deterministic endpoints (``/geomech/*``,
``/evaluate``) validate against the JSON Schemas shipped under
``rockreport/schemas``; those endpoints never touch the network. Provider
failures from ``/generate`` surface as 502 with a machine-readable cause;
the process-local rate limiter surfaces as 429.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema
from fastapi import Body, FastAPI, Request, Response, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import pipeline
from .domain import (
    ImageRef,
    ImageRole,
    Project,
    RASTER_MEDIA_TYPES,
    RockType,
    SectionKind,
    outcrop_from_dict,
    project_from_dict,
    project_to_dict,
    validate_project,
)
from .errors import NotFoundError, RockReportError
from .evalharness import EvaluationPair, evaluate_corpus
from .gateway import Gateway, GatewayError, LocalRateLimitError, ProviderConfig
from .geomech.rmr import (
    Groundwater,
    Infilling,
    RmrInput,
    Roughness,
    Weathering,
    compute_rmr,
)
from .geomech.smr import Excavation, FailureMode, SmrInput, compute_smr
from .geomech.schmidt import SchmidtTest, schmidt_summary
from .geomech.stereonet import equal_area_project, project_pole
from .store import ProjectStore


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    text = resources.files("rockreport.schemas").joinpath(f"{name}.schema.json") \
        .read_text(encoding="utf-8")
    return json.loads(text)


def validate_payload(schema_name: str, payload: object) -> None:
    jsonschema.validate(payload, load_schema(schema_name))


def _error_response(status: int, code: str, message: str,
                    violations: list[dict] | None = None,
                    section: str | None = None) -> JSONResponse:
    body: dict = {"error": {"code": code, "message": message}}
    if violations is not None:
        body["error"]["violations"] = violations
    if section is not None:
        body["error"]["section"] = section
    return JSONResponse(status_code=status, content=body)


def _violations_payload(project: Project) -> list[dict]:
    return [{"path": v.path, "message": v.message} for v in validate_project(project)]


def create_app(store_dir: str | Path | None = None,
               provider_config: ProviderConfig | None = None,
               gateway: Gateway | None = None) -> FastAPI:
    app = FastAPI(title="rockreport", version="0.1.0")
    store = ProjectStore(store_dir or Path.cwd() / "rockreport-store")
    gw = gateway or Gateway(config=provider_config or ProviderConfig())
    app.state.store = store
    app.state.gateway = gw

    @app.exception_handler(RockReportError)
    def handle_domain_error(request: Request, exc: RockReportError):
        status = 404 if isinstance(exc, NotFoundError) else 400
        return _error_response(status, exc.code, str(exc))

    @app.exception_handler(GatewayError)
    def handle_gateway_error(request: Request, exc: GatewayError):
        status = 429 if isinstance(exc, LocalRateLimitError) else 502
        return _error_response(status, exc.code, str(exc),
                               section=getattr(exc, "section", None))

    @app.exception_handler(jsonschema.ValidationError)
    def handle_schema_error(request: Request, exc: jsonschema.ValidationError):
        path = "/".join(str(p) for p in exc.absolute_path)
        return _error_response(400, "validation", exc.message,
                               violations=[{"path": path, "message": exc.message}])

    @app.exception_handler(RequestValidationError)
    def handle_request_error(request: Request, exc: RequestValidationError):
        violations = [{"path": ".".join(str(p) for p in err.get("loc", [])),
                       "message": err.get("msg", "invalid")} for err in exc.errors()]
        return _error_response(400, "validation", "invalid request body",
                               violations=violations)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    # -- projects ------------------------------------------------------------

    @app.post("/projects", status_code=201)
    def create_project(payload: dict = Body(...)):
        project = project_from_dict(payload)
        project_id = store.save_project(project)
        return {"id": project_id, "violations": _violations_payload(project)}

    @app.get("/projects")
    def list_projects():
        return {"projects": store.list_projects()}

    @app.get("/projects/{project_id}")
    def get_project(project_id: str):
        project = store.load_project(project_id)
        return project_to_dict(project)

    @app.put("/projects/{project_id}")
    def update_project(project_id: str, payload: dict = Body(...)):
        store.load_project(project_id)  # 404 for unknown ids
        project = project_from_dict(payload)
        store.save_project(project, project_id)
        return {"id": project_id, "violations": _violations_payload(project)}

    @app.post("/projects/{project_id}/outcrops", status_code=201)
    def add_outcrop(project_id: str, payload: dict = Body(...)):
        project = store.load_project(project_id)
        outcrop = outcrop_from_dict(payload)
        if project.outcrop(outcrop.id) is not None:
            return _error_response(400, "validation",
                                   f"outcrop id {outcrop.id} already exists",
                                   violations=[{"path": "id",
                                                "message": "duplicate outcrop id"}])
        project.outcrops.append(outcrop)
        store.save_project(project, project_id)
        return {"id": outcrop.id, "violations": _violations_payload(project)}

    @app.put("/projects/{project_id}/outcrops/{outcrop_id}")
    def update_outcrop(project_id: str, outcrop_id: int, payload: dict = Body(...)):
        project = store.load_project(project_id)
        existing = project.outcrop(outcrop_id)
        if existing is None:
            raise NotFoundError(f"outcrop {outcrop_id} not found")
        updated = outcrop_from_dict(payload)
        updated.id = outcrop_id
        project.outcrops[project.outcrops.index(existing)] = updated
        store.save_project(project, project_id)
        return {"id": outcrop_id, "violations": _violations_payload(project)}

    @app.post("/outcrops/{outcrop_id}/images", status_code=201)
    def upload_image(outcrop_id: int, project: str, role: str, file: UploadFile):
        if role not in (ImageRole.OUTCROP.value, ImageRole.HAND_SAMPLE.value):
            return _error_response(400, "validation", f"unknown image role {role!r}")
        proj = store.load_project(project)
        outcrop = proj.outcrop(outcrop_id)
        if outcrop is None:
            raise NotFoundError(f"outcrop {outcrop_id} not found")
        media_type = file.content_type or "application/octet-stream"
        if media_type not in RASTER_MEDIA_TYPES:
            return _error_response(400, "validation",
                                   f"not a raster image media type: {media_type!r}")
        data = file.file.read()
        if not data:
            return _error_response(400, "validation", "empty image upload")
        storage_key = store.put_image(data)
        image = ImageRef(id=f"img-{storage_key[:12]}", role=ImageRole(role),
                         media_type=media_type, byte_length=len(data),
                         storage_key=storage_key)
        outcrop.images.append(image)
        store.save_project(proj, project)
        return {"id": image.id, "role": image.role.value, "media_type": image.media_type,
                "byte_length": image.byte_length, "storage_key": image.storage_key}

    # -- generation ----------------------------------------------------------

    @app.post("/generate/{section}")
    def generate_section_route(section: str, project: str, outcrop: int | None = None):
        try:
            kind = SectionKind(section)
        except ValueError:
            return _error_response(400, "validation", f"unknown section {section!r}")
        if kind is SectionKind.PRELIMINARY:
            return _error_response(400, "validation",
                                   "preliminary prompts are not report sections")
        proj = store.load_project(project)

        def load_image(image: ImageRef):
            return image.media_type, store.get_image(image.storage_key)

        result = pipeline.generate_section(kind, proj, gw, outcrop_id=outcrop,
                                           load_image=load_image)
        store.save_project(proj, project)
        return {
            "kind": result.kind,
            "heading": result.heading,
            "editable": result.editable,
            "warnings": result.warnings,
            "blocks": [pipeline.block_to_dict(b) for b in result.blocks],
        }

    # -- deterministic geomechanics -------------------------------------------

    @app.post("/geomech/rmr")
    def geomech_rmr(payload: dict = Body(...)):
        validate_payload("rmr_request", payload)
        result = compute_rmr(RmrInput(
            n_joint_families=payload.get("n_joint_families", 0),
            ucs_mpa=payload["ucs_mpa"],
            rqd_pct=payload["rqd_pct"],
            spacing_m=payload["spacing_m"],
            persistence_m=payload["persistence_m"],
            aperture_mm=payload["aperture_mm"],
            roughness=Roughness(payload["roughness"]),
            infilling=Infilling(payload.get("infilling", "none")),
            weathering=Weathering(payload["weathering"]),
            groundwater=Groundwater(payload["groundwater"]),
            orientation_adjustment=payload.get("orientation_adjustment", 0),
        ))
        return {
            "per_parameter_points": result.per_parameter_points,
            "basic_total": result.basic_total,
            "adjusted_total": result.adjusted_total,
            "rmr_class": result.rmr_class,
            "class_description": result.class_description,
        }

    @app.post("/geomech/smr")
    def geomech_smr(payload: dict = Body(...)):
        validate_payload("smr_request", payload)
        result = compute_smr(SmrInput(
            rmr_basic=payload["rmr_basic"],
            joint_dip_direction=payload["joint_dip_direction"],
            joint_dip=payload["joint_dip"],
            slope_dip_direction=payload["slope_dip_direction"],
            slope_dip=payload["slope_dip"],
            failure_mode=FailureMode(payload["failure_mode"]),
            excavation=Excavation(payload["excavation"]),
        ))
        return {"f1": result.f1, "f2": result.f2, "f3": result.f3, "f4": result.f4,
                "smr_total": result.smr_total, "smr_class": result.smr_class,
                "class_description": result.class_description}

    @app.post("/geomech/schmidt")
    def geomech_schmidt(payload: dict = Body(...)):
        validate_payload("schmidt_request", payload)
        result = schmidt_summary(SchmidtTest(
            method=payload.get("method", ""),
            readings=payload["readings"],
            unit_weight_kn_m3=payload["unit_weight_kn_m3"],
            modulus_ratio=payload.get("modulus_ratio", 300.0),
        ))
        return {
            "hr_mean_top10": result.hr_mean_top10,
            "hr_median_top10": result.hr_median_top10,
            "ucs_mean_mpa": result.ucs_mean_mpa,
            "ucs_median_mpa": result.ucs_median_mpa,
            "young_modulus_mpa": result.young_modulus_mpa,
        }

    @app.post("/geomech/stereonet")
    def geomech_stereonet(payload: dict = Body(...)):
        validate_payload("stereonet_request", payload)
        if "joint_sets" in payload:
            points = []
            for js in payload["joint_sets"]:
                point = project_pole(js["dip_direction"], js["dip"],
                                     label=js.get("set_label", ""))
                points.append({"label": point.label, "trend": point.trend,
                               "plunge": point.plunge, "x": point.x, "y": point.y})
            return {"points": points}
        x, y = equal_area_project(payload["trend"], payload["plunge"])
        return {"x": x, "y": y}

    # -- evaluation ------------------------------------------------------------

    @app.post("/evaluate")
    def evaluate(payload: dict = Body(...)):
        validate_payload("evaluate_request", payload)
        pairs = [EvaluationPair(id=p["id"], category=RockType(p["category"]),
                                candidate=p["candidate"], reference=p["reference"])
                 for p in payload["pairs"]]
        return evaluate_corpus(pairs).to_dict()

    # -- report export -----------------------------------------------------------

    @app.get("/projects/{project_id}/report")
    def report(project_id: str, format: str = "json"):
        proj = store.load_project(project_id)
        document = pipeline.assemble_report(proj)
        data = pipeline.export(document, format)
        media = {"json": "application/json", "html": "text/html",
                 "markdown": "text/markdown"}[format]
        return Response(content=data, media_type=f"{media}; charset=utf-8")

    return app
