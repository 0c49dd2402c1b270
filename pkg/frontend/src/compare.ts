// Before/after pane with a draggable vertical divider. The after image
// sits on top and is clipped from the left, so dragging right reveals
// more of the enhanced result.

export class CompareView {
  readonly root: HTMLElement;
  private readonly beforeImg: HTMLImageElement;
  private readonly afterImg: HTMLImageElement;
  private readonly handle: HTMLElement;
  private split = 0.5;
  private dragging = false;

  constructor(container: HTMLElement) {
    this.root = document.createElement('div');
    this.root.className = 'compare';

    this.beforeImg = document.createElement('img');
    this.beforeImg.className = 'compare-before';
    this.beforeImg.alt = 'before';
    this.afterImg = document.createElement('img');
    this.afterImg.className = 'compare-after';
    this.afterImg.alt = 'after';
    this.handle = document.createElement('div');
    this.handle.className = 'compare-handle';

    this.root.appendChild(this.beforeImg);
    this.root.appendChild(this.afterImg);
    this.root.appendChild(this.handle);
    container.appendChild(this.root);

    this.handle.addEventListener('pointerdown', (event) => {
      this.dragging = true;
      this.handle.setPointerCapture?.(event.pointerId);
    });
    this.handle.addEventListener('pointermove', (event) => {
      if (this.dragging) this.dragTo(event.clientX);
    });
    this.handle.addEventListener('pointerup', () => {
      this.dragging = false;
    });
    // clicking anywhere in the pane jumps the divider there
    this.root.addEventListener('pointerdown', (event) => {
      if (event.target !== this.handle) this.dragTo(event.clientX);
    });

    this.applySplit();
  }

  setImages(beforeUrl: string, afterUrl: string): void {
    this.beforeImg.src = beforeUrl;
    this.afterImg.src = afterUrl;
  }

  get splitFraction(): number {
    return this.split;
  }

  setSplit(fraction: number): void {
    this.split = Math.min(1, Math.max(0, fraction));
    this.applySplit();
  }

  dragTo(clientX: number): void {
    const rect = this.root.getBoundingClientRect();
    if (rect.width <= 0) return;
    this.setSplit((clientX - rect.left) / rect.width);
  }

  private applySplit(): void {
    const percent = this.split * 100;
    // reveal the after layer left of the divider
    this.afterImg.style.clipPath = `inset(0 ${100 - percent}% 0 0)`;
    this.handle.style.left = `${percent}%`;
  }
}
