/** The stereonet canvas must plot exactly the points the API returned, and
 * no projection (geomechanics) math may run client-side.
 */
import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { OutcropBlock } from "../src/outcropBlock.js";
import { StereonetView } from "../src/stereonet.js";
import { UiProjectState } from "../src/state.js";
import { emptyOutcrop, emptyProject, StereoPoint } from "../src/types.js";
import { makeStubFetch } from "./stubApi.js";

interface ArcCall {
  x: number;
  y: number;
  r: number;
}

function recordingContext() {
  const arcs: ArcCall[] = [];
  const noop = () => undefined;
  const ctx = {
    arcs,
    clearRect: noop, beginPath: noop, stroke: noop, fill: noop,
    moveTo: noop, lineTo: noop, fillText: noop,
    arc: (x: number, y: number, r: number) => { arcs.push({ x, y, r }); },
    strokeStyle: "", fillStyle: "", lineWidth: 1, font: "", textAlign: "",
  };
  return ctx;
}

function canvasWithRecorder(size = 260) {
  const canvas = document.createElement("canvas");
  canvas.width = size;
  canvas.height = size;
  const ctx = recordingContext();
  (canvas as unknown as { getContext: () => unknown }).getContext = () => ctx;
  return { canvas, ctx };
}

// Deliberately "impossible" marker values: if these show up on the canvas the
// UI displayed the API output verbatim instead of recomputing anything.
const API_POINTS: StereoPoint[] = [
  { label: "J1", trend: 315, plunge: 30, x: 0.25, y: -0.5 },
  { label: "J2", trend: 30, plunge: 45, x: -0.125, y: 0.75 },
];

afterEach(() => {
  vi.restoreAllMocks();
});

describe("stereonet view", () => {
  it("plots exactly the API-returned points, linearly scaled", () => {
    const { canvas, ctx } = canvasWithRecorder();
    const view = new StereonetView(canvas);
    view.plot(API_POINTS);

    expect(view.lastPlotted).toEqual(API_POINTS);
    // first arc is the primitive circle; the rest are the two points
    const pointArcs = ctx.arcs.slice(1);
    expect(pointArcs).toHaveLength(API_POINTS.length);
    const expected = view.toPixels(API_POINTS);
    pointArcs.forEach((arc, i) => {
      expect(arc.x).toBeCloseTo(expected[i].px, 10);
      expect(arc.y).toBeCloseTo(expected[i].py, 10);
    });
    // the linear mapping inverts back to the API unit-disc coordinates
    const { width } = canvas;
    const radius = width / 2 - 14;
    pointArcs.forEach((arc, i) => {
      expect((arc.x - width / 2) / radius).toBeCloseTo(API_POINTS[i].x, 10);
      expect((width / 2 - arc.y) / radius).toBeCloseTo(API_POINTS[i].y, 10);
    });
  });

  it("performs no trigonometry while plotting", () => {
    const spies = ["sin", "cos", "tan", "asin", "acos", "atan", "atan2"].map(
      (fn) => vi.spyOn(Math, fn as "sin"));
    const { canvas } = canvasWithRecorder();
    new StereonetView(canvas).plot(API_POINTS);
    for (const spy of spies) {
      expect(spy).not.toHaveBeenCalled();
    }
  });
});

describe("outcrop block structural section", () => {
  it("sends joint sets to the API and draws only the response", async () => {
    const stub = makeStubFetch([
      { method: "POST", match: "/geomech/stereonet", body: { points: API_POINTS } },
    ]);
    const api = new ApiClient("", stub.fetchFn);
    const state = new UiProjectState(api, emptyProject());
    const outcrop = emptyOutcrop(1);
    outcrop.joint_sets = [
      { set_label: "J1", dip_direction: 135, dip: 60, count: 5 },
      { set_label: "J2", dip_direction: 210, dip: 45, count: 3 },
    ];
    const block = new OutcropBlock(api, state, outcrop);
    document.body.append(block.root);

    const canvas = block.root.querySelector(".stereonet-canvas") as HTMLCanvasElement;
    const ctx = recordingContext();
    (canvas as unknown as { getContext: () => unknown }).getContext = () => ctx;

    const trig = ["sin", "cos", "tan", "asin", "acos", "atan", "atan2"].map(
      (fn) => vi.spyOn(Math, fn as "sin"));
    await block.plotStereonet();

    // request carried the entered joint sets
    const call = stub.calls.find((c) => c.url.includes("/geomech/stereonet"))!;
    expect(call.body).toEqual({ joint_sets: outcrop.joint_sets });

    // canvas received exactly the API points, and no trig ran client-side
    expect(block.stereonet.lastPlotted).toEqual(API_POINTS);
    expect(ctx.arcs.length).toBe(1 + API_POINTS.length);
    for (const spy of trig) {
      expect(spy).not.toHaveBeenCalled();
    }
  });
});
