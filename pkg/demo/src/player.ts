export type AudioFactory = (src: string) => HTMLAudioElement

export interface QueueItem {
  src: string
  onDone?: (ok: boolean) => void
}

// Plays queued audio strictly one at a time: the next item starts only when
// the current one ends (or fails). A failed item reports ok=false and the
// queue moves on.
export class PlaybackQueue {
  private items: QueueItem[] = []
  private playing = false

  constructor(private createAudio: AudioFactory = defaultAudioFactory) {}

  enqueue(item: QueueItem): void {
    this.items.push(item)
    if (!this.playing) this.advance()
  }

  get pending(): number {
    return this.items.length
  }

  private advance(): void {
    const item = this.items.shift()
    if (!item) {
      this.playing = false
      return
    }
    this.playing = true
    const audio = this.createAudio(item.src)
    let settled = false
    const finish = (ok: boolean) => {
      if (settled) return
      settled = true
      item.onDone?.(ok)
      this.advance()
    }
    audio.addEventListener('ended', () => finish(true), { once: true })
    audio.addEventListener('error', () => finish(false), { once: true })
    try {
      const playing = audio.play()
      if (playing && typeof playing.catch === 'function') {
        playing.catch(() => finish(false))
      }
    } catch {
      finish(false)
    }
  }
}

function defaultAudioFactory(src: string): HTMLAudioElement {
  const audio = new Audio()
  audio.src = src
  return audio
}
