import { GatewayError, audioSrc, sendText } from './api'
import { loadHistory, saveHistory } from './history'
import { PlaybackQueue } from './player'
import type { Turn, UiConfig } from './types'

export interface AppDeps {
  send?: typeof sendText
  queue?: PlaybackQueue
  storage?: Storage
}

export class DemoApp {
  readonly turns: Turn[]
  private busy = false
  private readonly send: typeof sendText
  private readonly queue: PlaybackQueue
  private readonly storage: Storage

  private readonly banner: HTMLElement
  private readonly input: HTMLInputElement
  private readonly voiceSelect: HTMLSelectElement
  private readonly sendButton: HTMLButtonElement
  private readonly historyList: HTMLElement

  constructor(
    private readonly root: HTMLElement,
    private readonly config: UiConfig,
    deps: AppDeps = {}
  ) {
    this.send = deps.send ?? sendText
    this.queue = deps.queue ?? new PlaybackQueue()
    this.storage = deps.storage ?? window.sessionStorage
    this.root.innerHTML = template(config)
    this.banner = this.query('.banner')
    this.input = this.query<HTMLInputElement>('.composer-text')
    this.voiceSelect = this.query<HTMLSelectElement>('.composer-voice')
    this.sendButton = this.query<HTMLButtonElement>('.composer-send')
    this.historyList = this.query('.history')
    this.wireComposer()
    this.wireSuggestions()
    this.turns = loadHistory(this.storage)
    for (const turn of this.turns) {
      this.renderTurn(turn, { play: false })
    }
  }

  private query<T extends HTMLElement = HTMLElement>(selector: string): T {
    const el = this.root.querySelector<T>(selector)
    if (!el) throw new Error(`missing element ${selector}`)
    return el
  }

  private wireComposer(): void {
    this.query('form').addEventListener('submit', (event) => {
      event.preventDefault()
      void this.submit(this.input.value, this.voiceSelect.value)
    })
  }

  private wireSuggestions(): void {
    const section = this.query('.suggestions')
    if (!this.config.suggestions.length) {
      section.hidden = true
      return
    }
    for (const chip of Array.from(section.querySelectorAll('.chip'))) {
      chip.addEventListener('click', () => {
        // Chips only populate the box; the user still presses send.
        this.input.value = (chip as HTMLElement).dataset.text ?? ''
        this.input.focus()
      })
    }
  }

  get inFlight(): boolean {
    return this.busy
  }

  async submit(text: string, voice?: string): Promise<Turn | null> {
    const trimmed = text.trim()
    if (!trimmed || this.busy) return null
    this.busy = true
    this.sendButton.disabled = true
    this.hideBanner()
    try {
      const chosenVoice = voice || this.voiceSelect.value
      const res = await this.send(this.config, trimmed, chosenVoice)
      const turn: Turn = {
        text: trimmed,
        voice: chosenVoice,
        url: res.url,
        cached: res.cached,
        synthesis_ms: res.synthesis_ms,
        timestamp: Date.now()
      }
      this.turns.push(turn)
      saveHistory(this.storage, this.turns)
      this.renderTurn(turn, { play: true })
      this.input.value = ''
      return turn
    } catch (err) {
      this.showBanner(err)
      return null
    } finally {
      this.busy = false
      this.sendButton.disabled = false
    }
  }

  private renderTurn(turn: Turn, opts: { play: boolean }): void {
    const li = document.createElement('li')
    li.className = 'turn'
    li.dataset.cached = String(turn.cached)

    const text = document.createElement('div')
    text.className = 'turn-text'
    text.textContent = turn.text
    li.appendChild(text)

    const meta = document.createElement('div')
    meta.className = 'turn-meta'
    const badge = document.createElement('span')
    badge.className = turn.cached ? 'badge cached' : 'badge fresh'
    badge.textContent = turn.cached ? 'cached' : 'synthesized'
    meta.appendChild(badge)
    const latency = document.createElement('span')
    latency.className = 'latency'
    latency.textContent = turn.cached ? 'from cache' : `${turn.synthesis_ms} ms`
    meta.appendChild(latency)
    const voice = document.createElement('span')
    voice.className = 'voice'
    voice.textContent = turn.voice
    meta.appendChild(voice)
    li.appendChild(meta)

    const audio = document.createElement('audio')
    audio.controls = true
    audio.setAttribute('src', audioSrc(this.config, turn.url))
    li.appendChild(audio)

    const replay = document.createElement('button')
    replay.className = 'replay'
    replay.type = 'button'
    replay.textContent = 'replay'
    replay.addEventListener('click', () => {
      // Replay re-sends the same text and voice; a warm cache answers it
      // without synthesis and the new turn shows the cached badge.
      void this.submit(turn.text, turn.voice)
    })
    li.appendChild(replay)

    this.historyList.appendChild(li)
    if (opts.play) {
      this.queue.enqueue({
        src: audioSrc(this.config, turn.url),
        onDone: (ok) => {
          if (!ok) li.classList.add('failed')
        }
      })
    }
  }

  private showBanner(err: unknown): void {
    const message =
      err instanceof GatewayError
        ? `request rejected (${err.status} ${err.code}): ${err.message}`
        : `request failed: ${err instanceof Error ? err.message : String(err)}`
    this.banner.textContent = message
    this.banner.hidden = false
  }

  private hideBanner(): void {
    this.banner.hidden = true
    this.banner.textContent = ''
  }
}

function template(config: UiConfig): string {
  const options = config.voices
    .map((v) => `<option value="${escapeHtml(v)}">${escapeHtml(v)}</option>`)
    .join('')
  const chips = config.suggestions
    .map((s) => `<button type="button" class="chip" data-text="${escapeHtml(s)}">${escapeHtml(s)}</button>`)
    .join('')
  return `
    <header><h1>Digital voice demo</h1></header>
    <div class="banner" hidden></div>
    <section class="suggestions">${chips}</section>
    <form class="composer">
      <select class="composer-voice">${options}</select>
      <input class="composer-text" type="text" placeholder="Type a question" autocomplete="off" />
      <button class="composer-send" type="submit">Speak</button>
    </form>
    <ol class="history"></ol>
  `
}

function escapeHtml(value: string): string {
  return value
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
}

export function initApp(root: HTMLElement, config: UiConfig, deps: AppDeps = {}): DemoApp {
  return new DemoApp(root, config, deps)
}
