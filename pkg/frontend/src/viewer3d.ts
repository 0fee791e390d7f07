/** Surface (3-D) view: meshes rendered with three.js.
 *
 * ``buildSurfaceGeometry`` is a pure payload-to-BufferGeometry step so it
 * can be tested without WebGL; the ``Viewer3d`` class owns the renderer,
 * orbit controls, lighting, the wireframe overlay, and the hover value
 * readout.  The camera pose round-trips through the session state so a
 * recipe switch does not lose the orbit.
 */

import * as THREE from "three";
import { OrbitControls } from "three/addons/controls/OrbitControls.js";

import type { CameraPose } from "./state.js";
import type { MeshEnvelope } from "./types.js";

export function buildSurfaceGeometry(mesh: MeshEnvelope): THREE.BufferGeometry {
  const positions = new Float32Array(mesh.vertices.length * 3);
  mesh.vertices.forEach(([x, y, z], index) => {
    positions[index * 3] = x;
    positions[index * 3 + 1] = y;
    positions[index * 3 + 2] = z;
  });
  const indices = new Uint32Array(mesh.triangles.length * 3);
  mesh.triangles.forEach(([a, b, c], index) => {
    indices[index * 3] = a;
    indices[index * 3 + 1] = b;
    indices[index * 3 + 2] = c;
  });
  const geometry = new THREE.BufferGeometry();
  geometry.setAttribute("position", new THREE.BufferAttribute(positions, 3));
  geometry.setIndex(new THREE.BufferAttribute(indices, 1));
  geometry.computeVertexNormals();
  geometry.computeBoundingSphere();
  return geometry;
}

export interface HoverReadout {
  (point: { x: number; y: number; z: number } | null): void;
}

export class Viewer3d {
  private readonly scene = new THREE.Scene();
  private readonly camera: THREE.PerspectiveCamera;
  private readonly renderer: THREE.WebGLRenderer;
  private readonly controls: OrbitControls;
  private readonly raycaster = new THREE.Raycaster();
  private readonly pointer = new THREE.Vector2();
  private surface: THREE.Mesh | null = null;
  private wireframe: THREE.LineSegments | null = null;
  private wireframeOn = false;
  private onHover: HoverReadout | null = null;
  private onPoseChange: ((pose: CameraPose) => void) | null = null;

  constructor(private readonly container: HTMLElement) {
    this.camera = new THREE.PerspectiveCamera(45, 1, 0.01, 1000);
    this.renderer = new THREE.WebGLRenderer({ antialias: true });
    this.renderer.setPixelRatio(window.devicePixelRatio);
    this.container.appendChild(this.renderer.domElement);

    this.scene.background = new THREE.Color(0xf4f4f2);
    this.scene.add(new THREE.HemisphereLight(0xffffff, 0x886644, 0.9));
    const key = new THREE.DirectionalLight(0xffffff, 1.4);
    key.position.set(4, -6, 8);
    this.scene.add(key);
    const fill = new THREE.DirectionalLight(0xffffff, 0.4);
    fill.position.set(-5, 3, 2);
    this.scene.add(fill);

    this.controls = new OrbitControls(this.camera, this.renderer.domElement);
    this.controls.enableDamping = true;
    this.controls.addEventListener("change", () => {
      this.onPoseChange?.(this.pose());
    });

    this.renderer.domElement.addEventListener("pointermove", (event) => {
      this.handlePointer(event);
    });
    this.renderer.domElement.addEventListener("pointerleave", () => {
      this.onHover?.(null);
    });

    new ResizeObserver(() => this.resize()).observe(this.container);
    this.resize();
    this.renderer.setAnimationLoop(() => {
      this.controls.update();
      this.renderer.render(this.scene, this.camera);
    });
  }

  bindHover(readout: HoverReadout): void {
    this.onHover = readout;
  }

  bindPoseChange(listener: (pose: CameraPose) => void): void {
    this.onPoseChange = listener;
  }

  /** Swap in a new surface; the camera keeps its orbit. */
  show(geometry: THREE.BufferGeometry): void {
    this.disposeSurface();
    const material = new THREE.MeshStandardMaterial({
      color: 0x4976b5,
      metalness: 0.05,
      roughness: 0.65,
      side: THREE.DoubleSide,
      flatShading: false,
    });
    this.surface = new THREE.Mesh(geometry, material);
    this.scene.add(this.surface);
    this.refreshWireframe();
    this.frame(geometry);
  }

  clear(): void {
    this.disposeSurface();
  }

  setWireframe(on: boolean): void {
    this.wireframeOn = on;
    this.refreshWireframe();
  }

  pose(): CameraPose {
    const offset = this.camera.position.clone().sub(this.controls.target);
    const spherical = new THREE.Spherical().setFromVector3(offset);
    return {
      theta: spherical.theta,
      phi: spherical.phi,
      distance: spherical.radius,
    };
  }

  setPose(pose: CameraPose): void {
    const spherical = new THREE.Spherical(pose.distance, pose.phi, pose.theta);
    this.camera.position
      .setFromSpherical(spherical)
      .add(this.controls.target);
    this.camera.lookAt(this.controls.target);
  }

  private frame(geometry: THREE.BufferGeometry): void {
    const sphere = geometry.boundingSphere;
    if (sphere === null) {
      return;
    }
    this.controls.target.copy(sphere.center);
    const current = this.camera.position.clone().sub(sphere.center);
    const distance = Math.max(sphere.radius * 2.4, 0.1);
    if (current.lengthSq() < 1e-12) {
      current.set(1, -1, 1);
    }
    this.camera.position
      .copy(current.normalize().multiplyScalar(distance))
      .add(sphere.center);
    this.camera.near = distance / 100;
    this.camera.far = distance * 100;
    this.camera.updateProjectionMatrix();
    this.camera.lookAt(sphere.center);
  }

  private refreshWireframe(): void {
    if (this.wireframe !== null) {
      this.scene.remove(this.wireframe);
      this.wireframe.geometry.dispose();
      (this.wireframe.material as THREE.Material).dispose();
      this.wireframe = null;
    }
    if (this.wireframeOn && this.surface !== null) {
      const lines = new THREE.WireframeGeometry(this.surface.geometry);
      this.wireframe = new THREE.LineSegments(
        lines,
        new THREE.LineBasicMaterial({ color: 0x1a2a40, transparent: true, opacity: 0.5 }),
      );
      this.scene.add(this.wireframe);
    }
  }

  private disposeSurface(): void {
    if (this.surface !== null) {
      this.scene.remove(this.surface);
      this.surface.geometry.dispose();
      (this.surface.material as THREE.Material).dispose();
      this.surface = null;
    }
    this.refreshWireframe();
  }

  private handlePointer(event: PointerEvent): void {
    if (this.surface === null || this.onHover === null) {
      return;
    }
    const rect = this.renderer.domElement.getBoundingClientRect();
    this.pointer.x = ((event.clientX - rect.left) / rect.width) * 2 - 1;
    this.pointer.y = -((event.clientY - rect.top) / rect.height) * 2 + 1;
    this.raycaster.setFromCamera(this.pointer, this.camera);
    const hits = this.raycaster.intersectObject(this.surface, false);
    const first = hits[0];
    if (first === undefined) {
      this.onHover(null);
    } else {
      this.onHover({ x: first.point.x, y: first.point.y, z: first.point.z });
    }
  }

  private resize(): void {
    const width = this.container.clientWidth || 1;
    const height = this.container.clientHeight || 1;
    this.renderer.setSize(width, height, false);
    this.camera.aspect = width / height;
    this.camera.updateProjectionMatrix();
  }
}
