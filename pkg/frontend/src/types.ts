/** Mirrors of the server's canonical project JSON (lower_snake_case). */

export type RockType = "igneous" | "sedimentary" | "metamorphic";
export type ImageRole = "outcrop" | "hand_sample";

export interface ImageRef {
  id: string;
  role: ImageRole;
  media_type: string;
  byte_length: number;
  storage_key: string;
}

export interface JointSet {
  set_label: string;
  dip_direction: number;
  dip: number;
  count: number;
}

export interface RockCharacteristics {
  rock_type: RockType;
  rock_name: string;
  matrix: string;
  texture: string;
  mineralogy: string;
  grain_size: string;
  color: string;
  geology: string;
  main_structures: string;
  mass_quality: string;
  joint_description: string;
}

export interface RmrInput {
  n_joint_families: number;
  ucs_mpa: number;
  rqd_pct: number;
  spacing_m: number;
  persistence_m: number;
  aperture_mm: number;
  roughness: string;
  infilling: string;
  weathering: string;
  groundwater: string;
  orientation_adjustment: number;
}

export interface SchmidtTest {
  method: string;
  readings: number[];
  unit_weight_kn_m3: number;
  modulus_ratio: number;
}

export interface Outcrop {
  id: number;
  coordinates: [number, number, number];
  crs: string;
  rock: RockCharacteristics;
  joint_sets: JointSet[];
  images: ImageRef[];
  rmr_input: RmrInput | null;
  schmidt: SchmidtTest | null;
  generated: Record<string, string>;
}

export interface Project {
  title: string;
  location: string;
  university: string;
  faculty: string;
  program: string;
  course: string;
  authors: string[];
  date: string;
  outcrops: Outcrop[];
  generated: Record<string, string>;
}

export interface Violation {
  path: string;
  message: string;
}

export interface StereoPoint {
  label: string;
  trend: number;
  plunge: number;
  x: number;
  y: number;
}

export interface RmrResult {
  per_parameter_points: Record<string, number>;
  basic_total: number;
  adjusted_total: number;
  rmr_class: string;
  class_description: string;
}

export interface SchmidtResult {
  hr_mean_top10: number;
  hr_median_top10: number;
  ucs_mean_mpa: number;
  ucs_median_mpa: number;
  young_modulus_mpa: number;
}

export interface SectionBlock {
  kind: "paragraph" | "table" | "figure" | "numbered_list";
  text: string;
  title: string;
  columns: string[];
  rows: string[][];
  items: string[];
  figure: Record<string, unknown> | null;
}

export interface GeneratedSection {
  kind: string;
  heading: string;
  editable: boolean;
  warnings: string[];
  blocks: SectionBlock[];
}

export function emptyRock(): RockCharacteristics {
  return {
    rock_type: "sedimentary",
    rock_name: "",
    matrix: "",
    texture: "",
    mineralogy: "",
    grain_size: "",
    color: "",
    geology: "",
    main_structures: "",
    mass_quality: "",
    joint_description: "",
  };
}

export function emptyOutcrop(id: number): Outcrop {
  return {
    id,
    coordinates: [0, 0, 0],
    crs: "",
    rock: emptyRock(),
    joint_sets: [],
    images: [],
    rmr_input: null,
    schmidt: null,
    generated: {},
  };
}

export function emptyProject(): Project {
  return {
    title: "",
    location: "",
    university: "",
    faculty: "",
    program: "",
    course: "",
    authors: [],
    date: "",
    outcrops: [],
    generated: {},
  };
}
