// Client-side mutation serializer. The server already rejects overlapping
// mutations with a 409; the gate keeps well-behaved UI code from ever
// triggering that by queueing nothing and simply refusing while busy.

export type Refresh = () => Promise<void>;

export class MutationGate {
  private busyFlag = false;
  private listeners: Array<(busy: boolean) => void> = [];

  get busy(): boolean {
    return this.busyFlag;
  }

  onChange(fn: (busy: boolean) => void): void {
    this.listeners.push(fn);
  }

  private setBusy(v: boolean): void {
    this.busyFlag = v;
    for (const fn of this.listeners) fn(v);
  }

  /**
   * Run a mutation followed by a refresh of the derived views. Returns false
   * without doing anything if another mutation is still in flight.
   */
  async run(mutate: () => Promise<unknown>, refresh: Refresh): Promise<boolean> {
    if (this.busyFlag) return false;
    this.setBusy(true);
    try {
      await mutate();
      await refresh();
      return true;
    } finally {
      this.setBusy(false);
    }
  }
}
