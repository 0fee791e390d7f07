/** Debounced, latest-wins request scheduling.
 *
 * Dragging a slider can emit dozens of values per second; the service
 * should see at most one request per settle.  ``schedule`` waits
 * ``DEBOUNCE_MS`` of quiet before firing, each fire supersedes anything
 * still in flight (the old request is aborted and its reply — success or
 * failure — is discarded on arrival), and only the newest reply ever
 * reaches the sink.  Guarantees that after a rapid scrub the displayed
 * geometry is the one for the final value.
 */

export const DEBOUNCE_MS = 150;

export type GeometryRequest<T> = (signal: AbortSignal) => Promise<T>;

export interface SchedulerSink<T> {
  onResult(value: T): void;
  onError(error: unknown): void;
  /** Optional in-flight indicator (spinner etc.). */
  onBusy?(busy: boolean): void;
}

function isAbort(error: unknown): boolean {
  return error instanceof DOMException && error.name === "AbortError";
}

export class RequestScheduler<T> {
  private ticket = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private controller: AbortController | null = null;

  constructor(
    private readonly sink: SchedulerSink<T>,
    private readonly delay: number = DEBOUNCE_MS,
  ) {}

  /** Queue a request, restarting the quiet-period timer. */
  schedule(run: GeometryRequest<T>): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.fire(run);
    }, this.delay);
  }

  /** Fire immediately, bypassing the debounce (initial loads). */
  fireNow(run: GeometryRequest<T>): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    return this.fire(run);
  }

  /** Drop any pending timer and orphan anything in flight. */
  cancel(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.ticket += 1;
    this.controller?.abort();
    this.controller = null;
  }

  get pending(): boolean {
    return this.timer !== null;
  }

  private async fire(run: GeometryRequest<T>): Promise<void> {
    const ticket = ++this.ticket;
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    this.sink.onBusy?.(true);
    try {
      const value = await run(controller.signal);
      if (ticket !== this.ticket) {
        return; // a newer request owns the view now
      }
      this.sink.onResult(value);
    } catch (error) {
      if (ticket !== this.ticket || isAbort(error)) {
        return;
      }
      this.sink.onError(error);
    } finally {
      if (ticket === this.ticket) {
        this.sink.onBusy?.(false);
      }
    }
  }
}
